#include <horolab/multiprec.hpp>

#include <horolab/errors.hpp>

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>

namespace horolab::multiprec {

using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

namespace {

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(BigFloat::default_precision()) {
        if (bits < 16) throw std::invalid_argument("precision below 16 bits");
        if (bits > 1u << 20) throw CapacityError("precision above 2^20 bits");
        const auto digits10 =
            static_cast<unsigned>(std::ceil(static_cast<double>(bits) * 0.3010299957));
        BigFloat::default_precision(digits10);
    }
    ~PrecisionScope() { BigFloat::default_precision(saved_); }

private:
    unsigned saved_;
};

struct Mat {
    BigFloat a, b, c, d;
};

Mat generator_mat(std::int64_t n, const BigFloat& delta, int sign) {
    if (n < 1) throw std::invalid_argument("generator index must be >= 1");
    const BigFloat nd(n);
    const BigFloat n2p1 = nd * nd + 1;
    Mat m{delta + 2 * nd / n2p1, nd + n2p1 * delta, 1 / nd, n2p1 / nd};
    if (sign < 0) return Mat{m.d, -m.b, -m.c, m.a};
    return m;
}

Mat mul(const Mat& m, const Mat& n) {
    return Mat{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
               m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

}  // namespace

std::vector<double> generator_heights(std::span<const std::int64_t> indices,
                                      double delta, unsigned bits) {
    PrecisionScope scope(bits);
    const BigFloat d(delta);
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::int64_t n : indices) {
        const Mat m = generator_mat(n, d, +1);
        const BigFloat h = 1 / (m.a * m.a + m.c * m.c);
        out.push_back(h.convert_to<double>());
    }
    return out;
}

std::vector<double> generator_busemann(std::span<const std::int64_t> indices,
                                       double delta, unsigned bits) {
    PrecisionScope scope(bits);
    const BigFloat d(delta);
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::int64_t n : indices) {
        const Mat m = generator_mat(n, d, +1);
        const BigFloat v = log(m.a * m.a + m.c * m.c);
        out.push_back(v.convert_to<double>());
    }
    return out;
}

WordEval word_eval(std::span<const std::int64_t> factors, double delta,
                   unsigned bits) {
    if (factors.empty()) throw std::invalid_argument("word_eval: empty word");
    PrecisionScope scope(bits);
    const BigFloat d(delta);
    Mat acc{BigFloat(1), BigFloat(0), BigFloat(0), BigFloat(1)};
    for (std::int64_t f : factors) {
        if (f == 0) throw std::invalid_argument("word_eval: zero factor");
        acc = mul(acc, generator_mat(f < 0 ? -f : f, d, f < 0 ? -1 : +1));
    }
    WordEval r{};
    r.busemann = BigFloat(log(acc.a * acc.a + acc.c * acc.c)).convert_to<double>();
    r.endpoint = BigFloat(acc.a / acc.c).convert_to<double>();
    r.height = BigFloat(1 / (acc.c * acc.c + acc.d * acc.d)).convert_to<double>();
    return r;
}

}  // namespace horolab::multiprec
