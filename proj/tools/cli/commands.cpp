#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "resolvent/errors.hpp"
#include "resolvent/verification.hpp"

namespace resolvent::cli {
namespace {

using json = nlohmann::ordered_json;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json instance_json(const PotentialSpec& p) {
    if (const auto* b = std::get_if<SquareBarrier>(&p.value)) {
        return {{"kind", "square_barrier"}, {"v0", b->v0()}, {"a", b->a()}, {"b", b->b()}};
    }
    const auto& pw = std::get<PiecewisePotential>(p.value);
    return {{"kind", "piecewise"}, {"breakpoints", pw.breakpoints()}, {"heights", pw.heights()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Dispatch on the potential so square barriers keep the closed-form path.
template <class F>
auto with_potential(const PotentialSpec& p, F&& f) {
    return std::visit([&](const auto& v) { return f(v); }, p.value);
}

void require_grid(const std::vector<double>& v, const char* field) {
    if (v.empty()) throw ConfigError(field, "at least one point required");
    if (std::any_of(v.begin(), v.end(), [](double x) { return !(x >= 0.0); })) {
        throw ConfigError(field, "coordinates must be >= 0");
    }
}

void require_off_branch(const JobConfig& cfg, cplx e) {
    try {
        require_off_branch_points(cfg.potential.piecewise(), ComplexEnergy{e});
    } catch (const BranchPointError& ex) {
        throw ConfigError("--energy", ex.what());
    }
}

const SquareBarrier& barrier_only(const JobConfig& cfg, const char* command) {
    if (!cfg.potential.is_barrier()) {
        throw ConfigError("--breakpoints", std::string(command) + " supports the square barrier only");
    }
    return std::get<SquareBarrier>(cfg.potential.value);
}

}  // namespace

CommandResult cmd_eval(const JobConfig& cfg) {
    require_grid(cfg.r, "--r-grid");
    require_grid(cfg.s, "--s");
    for (cplx e : cfg.energies) {
        if (e.imag() == 0.0 && !(e.real() > 0.0)) throw ConfigError("--energy", "real energies must be positive");
        require_off_branch(cfg, e);
    }

    std::vector<KernelSample> rows;
    for (cplx e : cfg.energies) {
        // Off the real axis the half-plane picks the kernel; --direction applies to real E only.
        const std::vector<Direction> dirs =
            e.imag() == 0.0 ? cfg.directions : std::vector<Direction>{half_plane_direction(ComplexEnergy{e})};
        for (Direction d : dirs) {
            for (double s : cfg.s) {
                for (double r : cfg.r) {
                    rows.push_back(with_potential(cfg.potential, [&](const auto& p) {
                        return e.imag() == 0.0 ? formal_green(p, e.real(), r, s, d)
                                               : resolvent_kernel(p, ComplexEnergy{e}, r, s);
                    }));
                }
            }
        }
    }

    CommandResult res;
    if (cfg.format == OutputFormat::csv) {
        std::string out = "r,s,e_re,e_im,g_re,g_im,provenance\n";
        for (const auto& k : rows) {
            out += num(k.r) + ',' + num(k.s) + ',' + num(k.e.real()) + ',' + num(k.e.imag()) + ',' +
                   num(k.value.real()) + ',' + num(k.value.imag()) + ',' + std::string(to_string(k.provenance)) +
                   '\n';
        }
        res.output = std::move(out);
    } else {
        json samples = json::array();
        for (const auto& k : rows) {
            samples.push_back({{"r", k.r},
                               {"s", k.s},
                               {"e", cjson(k.e.value())},
                               {"g", cjson(k.value)},
                               {"provenance", to_string(k.provenance)}});
        }
        res.output = dump({{"instance", instance_json(cfg.potential)}, {"samples", samples}});
    }
    return res;
}

CommandResult cmd_limit_study(const JobConfig& cfg) {
    require_grid(cfg.r, "--r-grid");
    require_grid(cfg.s, "--s");
    for (cplx e : cfg.energies) {
        if (e.imag() != 0.0 || !(e.real() > 0.0)) {
            throw ConfigError("--energy", "limit-study needs real positive energies");
        }
        require_off_branch(cfg, e);
        if (cfg.mu0 && !(*cfg.mu0 > 0.0 && *cfg.mu0 <= 0.1 * e.real())) {
            throw ConfigError("--mu0", "must lie in (0, 0.1 E] for every energy");
        }
    }
    if (!(cfg.tolerance > 0.0)) throw ConfigError("--tolerance", "must be positive");

    struct Row {
        LimitStudy study;
        cplx formal;
        double difference;
        bool pass;
    };
    std::vector<Row> rows;
    for (cplx ez : cfg.energies) {
        const double e = ez.real();
        const double mu0 = cfg.mu0.value_or(0.1 * e);
        for (Direction d : cfg.directions) {
            for (double s : cfg.s) {
                for (double r : cfg.r) {
                    LimitStudy st = with_potential(cfg.potential, [&](const auto& p) {
                        try {
                            return boundary_limit(p, e, r, s, d, mu0);
                        } catch (const NonConvergenceError& ex) {
                            return ex.study();
                        }
                    });
                    const cplx formal =
                        with_potential(cfg.potential, [&](const auto& p) { return formal_green(p, e, r, s, d).value; });
                    const double diff = std::abs(st.extrapolated - formal);
                    const bool pass = st.converged && diff <= cfg.tolerance;
                    rows.push_back({std::move(st), formal, diff, pass});
                }
            }
        }
    }
    const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });

    CommandResult res;
    res.status = all_pass ? exit_ok : exit_check_failed;
    if (cfg.format == OutputFormat::csv) {
        // Long layout: `halvings` trajectory rows then one summary row per (E, direction, s, r).
        std::string out =
            "record,r,s,e,direction,k,mu,g_re,g_im,richardson_re,richardson_im,formal_re,formal_im,difference,"
            "converged,pass\n";
        for (const auto& row : rows) {
            const LimitStudy& st = row.study;
            const std::string key = num(st.r) + ',' + num(st.s) + ',' + num(st.e) + ',' +
                                    std::string(to_string(st.direction)) + ',';
            for (std::size_t k = 0; k < st.halvings(); ++k) {
                out += "trajectory," + key + std::to_string(k + 1) + ',' + num(st.mu_sequence[k]) + ',' +
                       num(st.samples[k].real()) + ',' + num(st.samples[k].imag()) + ",,,,,,,\n";
            }
            out += "summary," + key + std::to_string(st.halvings()) + ',' +
                   (st.halvings() ? num(st.mu_sequence.back()) : std::string{}) + ',' + num(st.extrapolated.real()) +
                   ',' + num(st.extrapolated.imag()) + ',' + num(st.richardson.real()) + ',' +
                   num(st.richardson.imag()) + ',' + num(row.formal.real()) + ',' + num(row.formal.imag()) + ',' +
                   num(row.difference) + ',' + (st.converged ? "true" : "false") + ',' +
                   (row.pass ? "true" : "false") + '\n';
        }
        res.output = std::move(out);
    } else {
        json studies = json::array();
        for (const auto& row : rows) {
            const LimitStudy& st = row.study;
            json traj = json::array();
            for (std::size_t k = 0; k < st.halvings(); ++k) {
                traj.push_back({{"k", k + 1}, {"mu", st.mu_sequence[k]}, {"g", cjson(st.samples[k])}});
            }
            studies.push_back({{"r", st.r},
                               {"s", st.s},
                               {"e", st.e},
                               {"direction", to_string(st.direction)},
                               {"mu0", st.mu0},
                               {"halvings", st.halvings()},
                               {"trajectory", traj},
                               {"extrapolated", cjson(st.extrapolated)},
                               {"richardson", cjson(st.richardson)},
                               {"formal", cjson(row.formal)},
                               {"difference", row.difference},
                               {"converged", st.converged},
                               {"pass", row.pass}});
        }
        res.output = dump({{"instance", instance_json(cfg.potential)},
                           {"tolerance", cfg.tolerance},
                           {"studies", studies},
                           {"pass", all_pass}});
    }
    return res;
}

CommandResult cmd_verify(const JobConfig& cfg) {
    VerificationConfig vc;
    vc.barrier = barrier_only(cfg, "verify");
    vc.seed = cfg.seed;
    if (cfg.random_instances < 0) throw ConfigError("--random-instances", "must be >= 0");
    vc.random_instances = cfg.random_instances;
    for (cplx e : cfg.energies) {
        require_off_branch(cfg, e);
        if (e.imag() == 0.0) {
            if (!(e.real() > 0.0)) throw ConfigError("--energy", "real energy must be positive");
            vc.energy = e.real();
        } else {
            vc.complex_energy = e;
        }
    }
    if (!std::isfinite(cfg.inject_fault)) throw ConfigError("--inject-fault", "must be finite");
    const KernelFactory factory = cfg.inject_fault != 0.0 ? corrupted_j4_kernel(cfg.inject_fault)
                                                          : KernelFactory{closed_form_kernel};
    const VerificationReport rep = run_verification(vc, factory);

    CommandResult res;
    res.status = rep.pass ? exit_ok : exit_check_failed;
    if (cfg.format == OutputFormat::csv) {
        std::string out = "name,samples,excluded,max_residual,tolerance,pass\n";
        for (const auto& c : rep.checks) {
            out += c.name + ',' + std::to_string(c.samples) + ',' + std::to_string(c.excluded) + ',' +
                   num(c.max_residual) + ',' + num(c.tolerance) + ',' + (c.pass ? "true" : "false") + '\n';
        }
        res.output = std::move(out);
    } else {
        json checks = json::array();
        for (const auto& c : rep.checks) {
            checks.push_back({{"name", c.name},
                              {"max_residual", c.max_residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass},
                              {"samples", c.samples},
                              {"excluded", c.excluded}});
        }
        res.output = dump({{"instance", instance_json(cfg.potential)},
                           {"energy", rep.energy},
                           {"complex_energy", cjson(vc.complex_energy)},
                           {"seed", rep.seed},
                           {"random_instances", vc.random_instances},
                           {"checks", checks},
                           {"pass", rep.pass}});
    }
    return res;
}

CommandResult cmd_pole_scan(const JobConfig& cfg) {
    const SquareBarrier& p = barrier_only(cfg, "pole-scan");
    if (!(cfg.seed_density > 0.0)) throw ConfigError("--seed-density", "must be positive");
    const SearchBox& box = cfg.box;
    if (!(box.re_min < box.re_max && box.im_min < box.im_max)) throw ConfigError("--box", "empty box");
    PoleScanOptions opts;
    opts.seed_spacing = cfg.seed_density;
    const auto poles = find_kernel_poles(p, box, opts);

    CommandResult res;
    if (cfg.format == OutputFormat::csv) {
        std::string out = "e_re,e_im,j4_abs,last_step\n";
        for (const auto& k : poles) {
            out += num(k.energy.real()) + ',' + num(k.energy.imag()) + ',' + num(k.j4_magnitude) + ',' +
                   num(k.last_step) + '\n';
        }
        res.output = std::move(out);
    } else {
        json list = json::array();
        for (const auto& k : poles) {
            list.push_back({{"energy", cjson(k.energy)}, {"j4_abs", k.j4_magnitude}, {"last_step", k.last_step}});
        }
        res.output = dump({{"instance", instance_json(cfg.potential)},
                           {"box", {{"re_min", box.re_min}, {"re_max", box.re_max}, {"im_min", box.im_min}, {"im_max", box.im_max}}},
                           {"seed_density", cfg.seed_density},
                           {"poles", list}});
    }
    return res;
}

namespace {

struct RawOptions {
    double v0 = 5.0;
    double a = 1.0;
    double b = 2.0;
    std::string breakpoints;
    std::string heights;
    std::vector<std::string> energy;
    std::string energy_sweep;
    std::string energy_re_grid;
    std::string energy_im_grid;
    std::string r;
    std::string r_grid;
    std::string s;
    std::string s_grid;
    std::string direction = "plus";
    std::optional<double> mu0;
    double tolerance = 1e-8;
    std::string box = "-5,5,-5,5";
    double seed_density = 0.25;
    std::uint64_t seed = 1;
    int random_instances = 4;
    double inject_fault = 0.0;
    std::string format;
    std::string out;
};

struct Barrier {
    CLI::Option* v0;
    CLI::Option* a;
    CLI::Option* b;
};

Barrier add_potential(CLI::App& cmd, RawOptions& o, bool piecewise) {
    Barrier opts{cmd.add_option("--v0", o.v0, "barrier height")->capture_default_str(),
                 cmd.add_option("--a", o.a, "inner edge")->capture_default_str(),
                 cmd.add_option("--b", o.b, "outer edge")->capture_default_str()};
    if (piecewise) {
        cmd.add_option("--breakpoints", o.breakpoints, "comma-separated ascending breakpoints");
        cmd.add_option("--heights", o.heights, "comma-separated region heights (one more than breakpoints)");
    }
    return opts;
}

void add_output(CLI::App& cmd, RawOptions& o) {
    cmd.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--out", o.out, "output path (default stdout)");
}

void add_grids(CLI::App& cmd, RawOptions& o) {
    cmd.add_option("--energy", o.energy, "complex energy such as 1.5+0.2i (repeatable)");
    cmd.add_option("--energy-sweep", o.energy_sweep, "real energies start:stop:step");
    cmd.add_option("--energy-re-grid", o.energy_re_grid, "real parts start:stop:step of an energy rectangle");
    cmd.add_option("--energy-im-grid", o.energy_im_grid, "imaginary parts start:stop:step of an energy rectangle");
    cmd.add_option("--r", o.r, "comma-separated r values");
    cmd.add_option("--r-grid", o.r_grid, "r grid start:stop:step");
    cmd.add_option("--s", o.s, "comma-separated s values");
    cmd.add_option("--s-grid", o.s_grid, "s grid start:stop:step");
    cmd.add_option("--direction", o.direction, "plus, minus or both (real energies)")->capture_default_str();
}

PotentialSpec build_potential(const RawOptions& o, const Barrier& flags) {
    const bool pw = !o.breakpoints.empty() || !o.heights.empty();
    if (pw) {
        if (flags.v0->count() || flags.a->count() || flags.b->count()) {
            throw ConfigError("--breakpoints", "cannot be combined with --v0/--a/--b");
        }
        if (o.heights.empty()) throw ConfigError("--heights", "required with --breakpoints");
        const auto bps = parse_list(o.breakpoints, "--breakpoints");
        const auto hs = parse_list(o.heights, "--heights");
        try {
            return {PiecewisePotential(bps, hs)};
        } catch (const std::exception& ex) {
            throw ConfigError("--breakpoints", ex.what());
        }
    }
    if (!std::isfinite(o.v0)) throw ConfigError("--v0", "must be finite");
    if (!(o.a > 0.0 && std::isfinite(o.a))) throw ConfigError("--a", "must satisfy 0 < a");
    if (!(o.b > o.a && std::isfinite(o.b))) throw ConfigError("--b", "must satisfy a < b");
    return {SquareBarrier{o.v0, o.a, o.b}};
}

std::vector<cplx> build_energies(const RawOptions& o) {
    const int modes = !o.energy.empty() + !o.energy_sweep.empty() + (!o.energy_re_grid.empty() || !o.energy_im_grid.empty());
    if (modes > 1) throw ConfigError("--energy", "use one of --energy, --energy-sweep, --energy-re-grid/--energy-im-grid");
    if (!o.energy_sweep.empty()) {
        std::vector<cplx> out;
        for (double x : parse_grid(o.energy_sweep, "--energy-sweep").points()) out.emplace_back(x, 0.0);
        return out;
    }
    if (!o.energy_re_grid.empty() || !o.energy_im_grid.empty()) {
        if (o.energy_re_grid.empty()) throw ConfigError("--energy-re-grid", "required with --energy-im-grid");
        if (o.energy_im_grid.empty()) throw ConfigError("--energy-im-grid", "required with --energy-re-grid");
        const auto re = parse_grid(o.energy_re_grid, "--energy-re-grid").points();
        const auto im = parse_grid(o.energy_im_grid, "--energy-im-grid").points();
        std::vector<cplx> out;
        for (double x : re) {
            for (double y : im) out.emplace_back(x, y);
        }
        return out;
    }
    if (o.energy.empty()) return {cplx{1.0, 0.0}};
    std::vector<cplx> out;
    for (const auto& e : o.energy) out.push_back(parse_complex(e, "--energy"));
    return out;
}

std::vector<double> build_points(const std::string& list, const std::string& grid, const char* list_flag,
                                 const char* grid_flag, std::vector<double> fallback) {
    if (!list.empty() && !grid.empty()) throw ConfigError(grid_flag, std::string("conflicts with ") + list_flag);
    if (!grid.empty()) return parse_grid(grid, grid_flag).points();
    if (!list.empty()) return parse_list(list, list_flag);
    return fallback;
}

OutputFormat build_format(const std::string& f, OutputFormat fallback) {
    if (f.empty()) return fallback;
    return f == "json" ? OutputFormat::json : OutputFormat::csv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Green function and resolvent kernel of the radial square barrier", "resolvent"};
    app.require_subcommand(1);
    RawOptions o;

    auto* eval = app.add_subcommand("eval", "evaluate G on r/s grids");
    const Barrier eval_b = add_potential(*eval, o, true);
    add_grids(*eval, o);
    add_output(*eval, o);

    auto* limit = app.add_subcommand("limit-study", "boundary values G(E +- i mu) as mu -> 0 against the formal G");
    const Barrier limit_b = add_potential(*limit, o, true);
    add_grids(*limit, o);
    limit->add_option("--mu0", o.mu0, "first mu is mu0 / 2 (default 0.1 E)");
    limit->add_option("--tolerance", o.tolerance, "allowed |limit - formal|")->capture_default_str();
    add_output(*limit, o);

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    const Barrier verify_b = add_potential(*verify, o, false);
    verify->add_option("--energy", o.energy, "real energy and/or complex energy (repeatable)");
    verify->add_option("--seed", o.seed, "seed for the random instances")->capture_default_str();
    verify->add_option("--random-instances", o.random_instances, "number of random barriers")->capture_default_str();
    verify->add_option("--inject-fault", o.inject_fault, "test hook: relative error put on J4");
    add_output(*verify, o);

    auto* poles = app.add_subcommand("pole-scan", "zeros of J4 in a complex energy box");
    const Barrier poles_b = add_potential(*poles, o, false);
    poles->add_option("--box", o.box, "re_min,re_max,im_min,im_max")->capture_default_str();
    poles->add_option("--seed-density", o.seed_density, "Newton seed grid spacing")->capture_default_str();
    add_output(*poles, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        JobConfig cfg;
        CommandResult res;
        if (eval->parsed() || limit->parsed()) {
            const bool is_eval = eval->parsed();
            cfg.potential = build_potential(o, is_eval ? eval_b : limit_b);
            cfg.energies = build_energies(o);
            cfg.r = build_points(o.r, o.r_grid, "--r", "--r-grid", is_eval ? std::vector<double>{} : std::vector{0.5, 1.5, 3.0});
            cfg.s = build_points(o.s, o.s_grid, "--s", "--s-grid", is_eval ? std::vector<double>{} : std::vector{0.5, 1.5, 3.0});
            cfg.directions = parse_directions(o.direction, "--direction");
            cfg.mu0 = o.mu0;
            cfg.tolerance = o.tolerance;
            cfg.format = build_format(o.format, OutputFormat::csv);
            res = is_eval ? cmd_eval(cfg) : cmd_limit_study(cfg);
        } else if (verify->parsed()) {
            cfg.potential = build_potential(o, verify_b);
            cfg.energies.clear();
            for (const auto& e : o.energy) cfg.energies.push_back(parse_complex(e, "--energy"));
            cfg.seed = o.seed;
            cfg.random_instances = o.random_instances;
            cfg.inject_fault = o.inject_fault;
            cfg.format = build_format(o.format, OutputFormat::json);
            res = cmd_verify(cfg);
        } else {
            cfg.potential = build_potential(o, poles_b);
            const auto b = parse_list(o.box, "--box");
            if (b.size() != 4) throw ConfigError("--box", "expected re_min,re_max,im_min,im_max");
            cfg.box = {b[0], b[1], b[2], b[3]};
            cfg.seed_density = o.seed_density;
            cfg.format = build_format(o.format, OutputFormat::csv);
            res = cmd_pole_scan(cfg);
        }

        if (o.out.empty()) {
            out << res.output << std::flush;
        } else {
            std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
            if (!f) throw ConfigError("--out", "cannot open " + o.out);
            f << res.output;
            if (!f.flush()) throw ConfigError("--out", "write failed for " + o.out);
        }
        if (res.status != exit_ok) err << "resolvent: one or more checks failed\n";
        return res.status;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const ContractError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_check_failed;
    }
}

}  // namespace resolvent::cli
