#include <horolab/config.hpp>

#include <horolab/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace horolab {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": " + value);
    }
    if (pos != value.size())
        throw std::invalid_argument("config: bad number for " + key + ": " + value);
    return v;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for " + key + ": " + value);
    }
    if (pos != value.size())
        throw std::invalid_argument("config: bad integer for " + key + ": " + value);
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: bad bool for " + key + ": " + value);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    const auto colon = std::count(text.begin(), text.end(), ':');
    if (colon == 2) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        const double start = parse_double("t_grid", text.substr(0, c1));
        const double stop = parse_double("t_grid", text.substr(c1 + 1, c2 - c1 - 1));
        const double step = parse_double("t_grid", text.substr(c2 + 1));
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("config: bad grid range " + text);
        // Count-based fill keeps the points exactly reproducible and makes
        // the intended inclusive endpoint robust to rounding.
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        grid.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) grid.push_back(start + step * static_cast<double>(i));
        return grid;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) grid.push_back(parse_double("t_grid", item));
    }
    if (grid.empty()) throw std::invalid_argument("config: empty grid: " + text);
    return grid;
}

std::string grid_to_text(const std::vector<double>& grid) {
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(grid[i]);
    }
    return out;
}

RunConfig::RunConfig() { t_grid = parse_grid("0:10:0.5"); }

void RunConfig::validate() const {
    if (!(std::isfinite(delta) && delta > 1.0))
        throw std::invalid_argument("config: delta must be > 1");
    if (generator_count < 1)
        throw std::invalid_argument("config: generator_count must be >= 1");
    if (word_alphabet < 1 || word_alphabet > generator_count)
        throw std::invalid_argument(
            "config: word_alphabet must be in [1, generator_count]");
    if (word_max_length < 1)
        throw std::invalid_argument("config: word_max_length must be >= 1");
    if (fineness_alphabet < 1 || fineness_alphabet > generator_count)
        throw std::invalid_argument(
            "config: fineness_alphabet must be in [1, generator_count]");
    if (fineness_max_length < 1)
        throw std::invalid_argument("config: fineness_max_length must be >= 1");
    if (t_grid.empty()) throw std::invalid_argument("config: t_grid must be nonempty");
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw std::invalid_argument("config: t_grid must be sorted");
    if (pingpong_depth < 1 || pingpong_samples < 1)
        throw std::invalid_argument("config: pingpong depth/samples must be >= 1");
    if (family_depth < 2)
        throw std::invalid_argument("config: family_depth must be >= 2");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    for (double tol : {tol_pingpong, tol_trace, tol_height, tol_height_limit,
                       tol_busemann_single, tol_busemann_pair, tol_time, tol_route,
                       tol_fib})
        if (!(tol > 0.0)) throw std::invalid_argument("config: tolerances must be > 0");
    if (!(endpoint_threshold > 0.0))
        throw std::invalid_argument("config: endpoint_threshold must be > 0");
}

std::string RunConfig::resolved_output_dir() const {
    if (!output_dir.empty()) return output_dir;
    if (const char* env = std::getenv("HOROLAB_OUT"); env && *env) return env;
    return "horolab-out";
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << "delta=" << format_double(delta) << '\n'
       << "endpoint_threshold=" << format_double(endpoint_threshold) << '\n'
       << "family_depth=" << family_depth << '\n'
       << "fineness_alphabet=" << fineness_alphabet << '\n'
       << "fineness_max_length=" << fineness_max_length << '\n'
       << "generator_count=" << generator_count << '\n'
       << "max_words=" << max_words << '\n'
       << "output_dir=" << output_dir << '\n'
       << "pingpong_depth=" << pingpong_depth << '\n'
       << "pingpong_samples=" << pingpong_samples << '\n'
       << "precision_bits=" << precision_bits << '\n'
       << "spool_words=" << (spool_words ? "true" : "false") << '\n'
       << "t_grid=" << grid_to_text(t_grid) << '\n'
       << "threads=" << threads << '\n'
       << "tol_busemann_pair=" << format_double(tol_busemann_pair) << '\n'
       << "tol_busemann_single=" << format_double(tol_busemann_single) << '\n'
       << "tol_fib=" << format_double(tol_fib) << '\n'
       << "tol_height=" << format_double(tol_height) << '\n'
       << "tol_height_limit=" << format_double(tol_height_limit) << '\n'
       << "tol_pingpong=" << format_double(tol_pingpong) << '\n'
       << "tol_route=" << format_double(tol_route) << '\n'
       << "tol_time=" << format_double(tol_time) << '\n'
       << "tol_trace=" << format_double(tol_trace) << '\n'
       << "word_alphabet=" << word_alphabet << '\n'
       << "word_max_length=" << word_max_length << '\n';
    return os.str();
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "delta") delta = parse_double(key, value);
    else if (key == "generator_count") generator_count = static_cast<int>(parse_int(key, value));
    else if (key == "word_alphabet") word_alphabet = static_cast<int>(parse_int(key, value));
    else if (key == "word_max_length") word_max_length = static_cast<int>(parse_int(key, value));
    else if (key == "max_words") max_words = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "fineness_alphabet") fineness_alphabet = static_cast<int>(parse_int(key, value));
    else if (key == "fineness_max_length") fineness_max_length = static_cast<int>(parse_int(key, value));
    else if (key == "t_grid") t_grid = parse_grid(value);
    else if (key == "pingpong_depth") pingpong_depth = static_cast<int>(parse_int(key, value));
    else if (key == "pingpong_samples") pingpong_samples = static_cast<int>(parse_int(key, value));
    else if (key == "family_depth") family_depth = static_cast<int>(parse_int(key, value));
    else if (key == "endpoint_threshold") endpoint_threshold = parse_double(key, value);
    else if (key == "tol_pingpong") tol_pingpong = parse_double(key, value);
    else if (key == "tol_trace") tol_trace = parse_double(key, value);
    else if (key == "tol_height") tol_height = parse_double(key, value);
    else if (key == "tol_height_limit") tol_height_limit = parse_double(key, value);
    else if (key == "tol_busemann_single") tol_busemann_single = parse_double(key, value);
    else if (key == "tol_busemann_pair") tol_busemann_pair = parse_double(key, value);
    else if (key == "tol_time") tol_time = parse_double(key, value);
    else if (key == "tol_route") tol_route = parse_double(key, value);
    else if (key == "tol_fib") tol_fib = parse_double(key, value);
    else if (key == "precision_bits") precision_bits = static_cast<unsigned>(parse_int(key, value));
    else if (key == "threads") threads = static_cast<int>(parse_int(key, value));
    else if (key == "spool_words") spool_words = parse_bool(key, value);
    else if (key == "output_dir") output_dir = value;
    else throw std::invalid_argument("config: unknown key: " + key);
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got: " + line);
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot read " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return from_text(buf.str());
}

}  // namespace horolab
