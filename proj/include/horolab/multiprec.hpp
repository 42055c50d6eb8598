#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace horolab::multiprec {

// Extended-precision reruns of the coefficient formulas, for checking that
// double stays trustworthy once indices grow past ~1e6.  Precision is chosen
// per call in bits; results come back rounded to double.

// Im h_n^{-1}(i) = 1/(a_n^2 + c_n^2) for each index.
std::vector<double> generator_heights(std::span<const std::int64_t> indices,
                                      double delta, unsigned bits);

// ln(a_n^2 + c_n^2), the Busemann value of the single-letter word h_n.
std::vector<double> generator_busemann(std::span<const std::int64_t> indices,
                                       double delta, unsigned bits);

struct WordEval {
    double busemann;  // ln(A^2 + C^2) of the product matrix
    double endpoint;  // A/C, the image of infinity
    double height;    // Im of the product applied at i
};

// Evaluates a word given as signed generator indices (negative = inverse),
// composed left to right.
WordEval word_eval(std::span<const std::int64_t> factors, double delta,
                   unsigned bits);

}  // namespace horolab::multiprec
