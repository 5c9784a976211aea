#include "cli/job_config.hpp"

#include <charconv>
#include <cmath>

namespace resolvent::cli {
namespace {

std::string_view trim(std::string_view t) {
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
    return t;
}

double parse_double(std::string_view text, const std::string& field) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(field, "not a number: '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
}

}  // namespace

std::vector<double> Grid::points() const {
    std::vector<double> out;
    const double guard = 1e-12 * step;
    for (long j = 0;; ++j) {
        const double x = start + static_cast<double>(j) * step;
        if (x >= stop - guard) break;
        out.push_back(x);
    }
    return out;
}

Grid parse_grid(std::string_view text, const std::string& field) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ConfigError(field, "expected start:stop:step");
    Grid g{parse_double(text.substr(0, c1), field), parse_double(text.substr(c1 + 1, c2 - c1 - 1), field),
           parse_double(text.substr(c2 + 1), field)};
    if (!(g.step > 0.0)) throw ConfigError(field, "step must be positive");
    if (!(g.stop > g.start)) throw ConfigError(field, "stop must exceed start");
    if ((g.stop - g.start) / g.step > 1e7) throw ConfigError(field, "more than 1e7 points");
    return g;
}

cplx parse_complex(std::string_view text, const std::string& field) {
    text = trim(text);
    if (text.empty()) throw ConfigError(field, "empty value");
    if (text.back() != 'i' && text.back() != 'j') return {parse_double(text, field), 0.0};
    text.remove_suffix(1);
    // split at the last sign that is not an exponent sign or the leading one
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size(); i-- > 1;) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string_view re = split == std::string_view::npos ? std::string_view{} : text.substr(0, split);
    std::string_view im = split == std::string_view::npos ? text : text.substr(split);
    double im_v = 0.0;
    if (im.empty() || im == "+") {
        im_v = 1.0;
    } else if (im == "-") {
        im_v = -1.0;
    } else {
        im_v = parse_double(im, field);
    }
    return {re.empty() ? 0.0 : parse_double(re, field), im_v};
}

std::vector<double> parse_list(std::string_view text, const std::string& field) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (!trim(item).empty()) out.push_back(parse_double(item, field));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<Direction> parse_directions(std::string_view text, const std::string& field) {
    if (text == "plus") return {Direction::plus};
    if (text == "minus") return {Direction::minus};
    if (text == "both") return {Direction::plus, Direction::minus};
    throw ConfigError(field, "expected plus, minus or both");
}

PiecewisePotential PotentialSpec::piecewise() const {
    if (const auto* b = std::get_if<SquareBarrier>(&value)) return to_piecewise(*b);
    return std::get<PiecewisePotential>(value);
}

}  // namespace resolvent::cli
