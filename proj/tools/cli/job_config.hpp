#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "resolvent/green_kernel.hpp"
#include "resolvent/model.hpp"
#include "resolvent/piecewise_potential.hpp"

namespace resolvent::cli {

/// Bad user input. `field` is the flag that caused it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Closed-open `start:stop:step`; point j is start + j * step.
struct Grid {
    double start;
    double stop;
    double step;

    [[nodiscard]] std::vector<double> points() const;
};

Grid parse_grid(std::string_view text, const std::string& field);
/// "1.5", "1.5+0.2i", "-2e-1-3i", "0.5i".
cplx parse_complex(std::string_view text, const std::string& field);
std::vector<double> parse_list(std::string_view text, const std::string& field);
std::vector<Direction> parse_directions(std::string_view text, const std::string& field);

enum class OutputFormat { csv, json };

struct PotentialSpec {
    std::variant<SquareBarrier, PiecewisePotential> value;

    [[nodiscard]] bool is_barrier() const noexcept { return std::holds_alternative<SquareBarrier>(value); }
    [[nodiscard]] PiecewisePotential piecewise() const;
};

struct JobConfig {
    PotentialSpec potential{SquareBarrier{5.0, 1.0, 2.0}};
    std::vector<cplx> energies{cplx{1.0, 0.0}};
    std::vector<double> r;
    std::vector<double> s;
    std::vector<Direction> directions{Direction::plus};
    std::optional<double> mu0;
    double tolerance = 1e-8;
    SearchBox box{-5.0, 5.0, -5.0, 5.0};
    double seed_density = 0.25;
    std::uint64_t seed = 1;
    int random_instances = 4;
    double inject_fault = 0.0;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> out;
};

}  // namespace resolvent::cli
