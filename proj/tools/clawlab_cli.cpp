// clawlab: experiment driver for the recursive claw-detection algorithm.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or parse error.

#include "clawlab/bench.hpp"
#include "clawlab/claw_recursive.hpp"
#include "clawlab/concentration.hpp"
#include "clawlab/exponents.hpp"
#include "clawlab/instance.hpp"
#include "clawlab/reductions.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

using namespace clawlab;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct CostFlags {
    double c_grover = 1.0;
    int read_charge = 1;
    double miss_prob = 0.0;
    bool pin_sqrt_m = false;
    std::string b_mode = "bound";
    double sample_const = 4.0;

    void add_to(CLI::App* app) {
        app->add_option("--c-grover", c_grover, "Multiplier on sqrt-style charges")->capture_default_str();
        app->add_option("--read-charge", read_charge, "Charge per sample read (0 or 1)")
            ->check(CLI::IsMember({0, 1}))
            ->capture_default_str();
        app->add_option("--miss-prob", miss_prob, "Grover failure injection probability")->capture_default_str();
        app->add_flag("--pin-sqrt-m", pin_sqrt_m, "Charge sqrt(m) for every search regardless of marked count");
        app->add_option("--b-mode", b_mode, "How step 2 sizes the sub-instance")
            ->check(CLI::IsMember({"bound", "oracle"}))
            ->capture_default_str();
        app->add_option("--sample-const", sample_const, "Constant c in c*n^alpha*ln n")->capture_default_str();
    }

    CostModel model() const {
        CostModel m;
        m.c_grover = c_grover;
        m.classical_read_charge = read_charge;
        m.grover_miss_prob = miss_prob;
        m.grover_charge_uses_marked = !pin_sqrt_m;
        m.validate();
        return m;
    }
};

struct SpecFlags {
    std::int64_t n = 256;
    double kappa = 0.4;
    std::string family = "random-planted-claw";
    std::uint64_t seed = 1;
    std::int64_t multiplicity = 1;

    void add_to(CLI::App* app) {
        app->add_option("--n", n, "Instance size")->capture_default_str();
        app->add_option("--kappa", kappa, "Alphabet exponent, k = max(2, floor(n^kappa))")->capture_default_str();
        app->add_option("--family", family, "Instance family")
            ->check(CLI::IsMember({"random-no-claw", "random-planted-claw", "hard-singleton-yes", "hard-singleton-no",
                                   "uniform"}))
            ->capture_default_str();
        app->add_option("--seed", seed, "Random seed")->capture_default_str();
        app->add_option("--multiplicity", multiplicity, "Planted value copies per side")->capture_default_str();
    }

    InstanceSpec spec() const {
        InstanceSpec s;
        s.n = n;
        s.kappa = kappa;
        s.family = parse_family(family);
        s.seed = seed;
        s.planted_multiplicity = multiplicity;
        return s;
    }
};

/// Writes to `path`, or stdout when empty.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write output file: " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int cmd_gen(const SpecFlags& sf, const std::string& out_path) {
    const ClawInstance inst = generate(sf.spec());
    Output out(out_path);
    write_instance(out.stream(), inst);
    return kOk;
}

int cmd_run(const SpecFlags& sf, const std::string& instance_path, int depth, const CostFlags& cf,
            const std::string& format) {
    const ClawInstance inst = instance_path.empty() ? generate(sf.spec()) : load_instance(instance_path);
    const CostModel cost = cf.model();
    const AlgoParams p = make_params(inst.n(), inst.k(), depth, parse_b_mode(cf.b_mode), cf.sample_const);
    QueryLedger ledger;
    const RunResult res = run_Ai(inst, p, ledger, cost, sf.seed);

    if (format == "json") {
        nlohmann::json j = {{"decision", res.decision},
                            {"truth", exact_claw(inst)},
                            {"n", inst.n()},
                            {"k", inst.k()},
                            {"depth", depth},
                            {"alpha", p.alpha},
                            {"epsilon_achieved", epsilon_achieved(depth, p.kappa)},
                            {"oracle_view_cost", ledger.oracle_view_cost()},
                            {"ledger", ledger.to_json()}};
        if (res.witness) j["witness"] = {res.witness->x_index, res.witness->y_index};
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << "decision        " << (res.decision ? "true" : "false") << '\n'
              << "n k             " << inst.n() << ' ' << inst.k() << '\n'
              << "depth           " << depth << '\n'
              << "kappa           " << format_number(p.kappa) << (p.kappa_in_range ? "" : "  (outside [0, 2/3])") << '\n'
              << "alpha           " << format_number(p.alpha) << '\n'
              << "epsilon         " << format_number(epsilon_achieved(depth, p.kappa)) << '\n'
              << "ell             " << p.ell << (p.degenerate ? "  (whole side sampled)" : "") << '\n'
              << "x_reads         " << ledger.x_reads() << '\n'
              << "y_reads         " << ledger.y_reads() << '\n'
              << "charged_cost    " << format_number(ledger.charged_cost()) << '\n'
              << "oracle_view     " << format_number(ledger.oracle_view_cost()) << '\n';
    if (res.witness) std::cout << "witness         x[" << res.witness->x_index << "] = y[" << res.witness->y_index << "]\n";
    std::cout << "by label:\n";
    for (const auto& [label, amount] : ledger.by_label()) std::printf("  %-14s %s\n", label.c_str(), format_number(amount).c_str());
    return kOk;
}

int cmd_sweep(SweepConfig cfg, const CostFlags& cf, const std::string& family, const std::string& format,
              const std::string& out_path) {
    cfg.cost = cf.model();
    cfg.b_mode = parse_b_mode(cf.b_mode);
    cfg.sample_const = cf.sample_const;
    cfg.family = parse_family(family);
    const SweepResult r = run_sweep(cfg);
    Output out(out_path);
    if (format == "json") {
        out.stream() << sweep_to_json(r).dump(2) << '\n';
    } else {
        write_sweep_csv(out.stream(), r);
    }
    return kOk;
}

int cmd_fit(const std::string& in_path, const std::string& format, std::optional<double> tolerance) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open sweep output: " + in_path);
    std::vector<std::string> warnings;
    const auto fits = fit_sweep(read_sweep_rows(in), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

    bool ok = true;
    if (format == "json") {
        std::cout << fit_to_json(fits).dump(2) << '\n';
    } else {
        std::printf("%-8s %-3s %-6s %-9s %-9s %-7s %-9s %s\n", "kappa", "i", "points", "slope", "predicted", "r2",
                    "epsilon", "status");
    }
    for (const auto& f : fits) {
        const bool pass = !tolerance || std::abs(f.slope - f.predicted) <= *tolerance;
        ok = ok && pass;
        if (format != "json")
            std::printf("%-8s %-3d %-6zu %-9.4f %-9.4f %-7.4f %-9.5f %s\n", format_number(f.kappa).c_str(), f.depth,
                        f.points, f.slope, f.predicted, f.r2, f.epsilon_achieved,
                        tolerance ? (pass ? "ok" : "OUTSIDE TOLERANCE") : "-");
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_exponents(int i_max, const std::string& grid_step) {
    const Rational step = parse_rational(grid_step);
    bool ok = true;
    std::printf("%-4s %-8s %-24s %s\n", "i", "points", "min residual", "status");
    for (int i = 1; i <= i_max; ++i) {
        try {
            const auto pts = verify_recurrence(i, step);
            Rational lo = pts.front().residual;
            for (const auto& p : pts)
                if (p.residual < lo) lo = p.residual;
            std::printf("%-4d %-8zu %-24s ok\n", i, pts.size(), to_string(lo).c_str());
        } catch (const RecurrenceViolation& e) {
            ok = false;
            std::printf("%-4d %-8s %-24s FAIL: %s\n", i, "-", "-", e.what());
        }
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_concentration(const ConcentrationConfig& cfg, const std::string& format) {
    const ConcentrationReport r = run_concentration(cfg);
    const auto within = r.within_bounds();
    if (format == "json") {
        std::cout << r.to_json().dump(2) << '\n';
    } else {
        const char* names[] = {"E1 unseen heavy value", "E2 element never first", "E3 first element too late"};
        const double freqs[] = {r.event_E1_freq, r.event_E2_freq, r.event_E3_freq};
        for (int e = 0; e < 3; ++e)
            std::printf("%-26s freq %-10.6f bound %-12.6g limit %-12.6g %s\n", names[e], freqs[e], r.paper_bounds[e],
                        bound_with_slack(r.paper_bounds[e], r.trials), within[e] ? "ok" : "FAIL");
        std::printf("|B| after sampling: min %g median %g mean %g max %g\n", r.b_empirical.min, r.b_empirical.median,
                    r.b_empirical.mean, r.b_empirical.max);
    }
    return within[0] && within[1] && within[2] ? kOk : kCheckFailed;
}

int cmd_reduce(std::int64_t k_max, std::int64_t m_max, std::int64_t random, std::uint64_t seed, bool emit,
               std::int64_t n, std::int64_t k, bool want_claw, const std::string& out_path) {
    if (emit) {
        const ComposedInstance ci = gen_composed(n, k, seed, want_claw);
        Output out(out_path);
        write_instance(out.stream(), reduce_to_claw(ci));
        return kOk;
    }
    // k bounds the reduced alphabet, so the inner claw has size at most k - 2.
    const ReductionCheck ex = check_reduction_exhaustive(k_max - 2, m_max);
    const ReductionCheck rnd = check_reduction_random(random, seed);
    std::printf("exhaustive (k_inner <= %lld, m <= %lld): %lld cases, %lld mismatches\n",
                static_cast<long long>(k_max - 2), static_cast<long long>(m_max), static_cast<long long>(ex.cases),
                static_cast<long long>(ex.mismatches));
    std::printf("random: %lld cases, %lld mismatches\n", static_cast<long long>(rnd.cases),
                static_cast<long long>(rnd.mismatches));
    return ex.mismatches == 0 && rnd.mismatches == 0 ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clawlab: cost-accounted experiments for recursive claw detection"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    SpecFlags gen_spec;
    std::string gen_out;
    gen_spec.add_to(gen);
    gen->add_option("--out", gen_out, "Output path (stdout when omitted)");

    // run
    auto* run = app.add_subcommand("run", "Run the algorithm once and print the ledger");
    SpecFlags run_spec;
    CostFlags run_cost;
    std::string run_instance, run_format = "text";
    int run_depth = 1;
    run_spec.add_to(run);
    run_cost.add_to(run);
    run->add_option("--instance", run_instance, "Instance file (otherwise generated from the spec flags)");
    run->add_option("--depth", run_depth, "Recursion depth i")->capture_default_str();
    run->add_option("--format", run_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a grid of trials");
    SweepConfig sweep_cfg;
    sweep_cfg.n_list = {256, 1024, 4096};
    sweep_cfg.kappa_list = {0.2, 0.4, 0.6};
    sweep_cfg.depth_list = {1, 2};
    sweep_cfg.trials = 10;
    CostFlags sweep_cost;
    std::string sweep_family = "random-planted-claw", sweep_format = "csv", sweep_out;
    sweep->add_option("--n", sweep_cfg.n_list, "Instance sizes")->capture_default_str();
    sweep->add_option("--kappa", sweep_cfg.kappa_list, "Alphabet exponents")->capture_default_str();
    sweep->add_option("--depth", sweep_cfg.depth_list, "Recursion depths")->capture_default_str();
    sweep->add_option("--trials", sweep_cfg.trials)->capture_default_str();
    sweep->add_option("--seed", sweep_cfg.seed)->capture_default_str();
    sweep->add_option("--jobs", sweep_cfg.jobs, "Worker threads")->capture_default_str();
    sweep->add_option("--family", sweep_family)
        ->check(CLI::IsMember({"random-no-claw", "random-planted-claw", "hard-singleton-yes", "hard-singleton-no",
                               "uniform"}))
        ->capture_default_str();
    sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sweep->add_option("--out", sweep_out, "Output path (stdout when omitted)");
    sweep_cost.add_to(sweep);

    // fit
    auto* fit = app.add_subcommand("fit", "Fit log-log scaling exponents to sweep output");
    std::string fit_in, fit_format = "text";
    std::optional<double> fit_tol;
    fit->add_option("input", fit_in, "Sweep output (CSV or JSON)")->required();
    fit->add_option("--format", fit_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    fit->add_option("--tolerance", fit_tol, "Fail when |slope - T_i(kappa)| exceeds this");

    // exponents
    auto* expo = app.add_subcommand("exponents", "Check the exponent recursion in exact arithmetic");
    int i_max = 10;
    std::string grid_step = "1/1000";
    expo->add_option("i_max", i_max, "Largest depth")->capture_default_str();
    expo->add_option("grid_step", grid_step, "Kappa grid step, e.g. 0.001 or 1/1000")->capture_default_str();

    // concentration
    auto* conc = app.add_subcommand("concentration", "Measure the sampling analysis' bad events");
    ConcentrationConfig conc_cfg;
    std::string conc_format = "text";
    conc->add_option("--trials", conc_cfg.trials)->capture_default_str();
    conc->add_option("--seed", conc_cfg.seed)->capture_default_str();
    conc->add_option("--e1-n", conc_cfg.e1_n)->capture_default_str();
    conc->add_option("--e1-kappa", conc_cfg.e1_kappa)->capture_default_str();
    conc->add_option("--e1-depth", conc_cfg.e1_depth)->capture_default_str();
    conc->add_option("--e2-n", conc_cfg.e2_n)->capture_default_str();
    conc->add_option("--e2-b", conc_cfg.e2_b)->capture_default_str();
    conc->add_option("--e3-n", conc_cfg.e3_n)->capture_default_str();
    conc->add_option("--e3-b", conc_cfg.e3_b)->capture_default_str();
    conc->add_option("--format", conc_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    // reduce
    auto* red = app.add_subcommand("reduce", "Check the composed-instance reduction, or emit a reduced instance");
    std::int64_t red_k_max = 6, red_m_max = 3, red_random = 10000, red_n = 12, red_k = 5;
    std::uint64_t red_seed = 1;
    bool red_emit = false, red_want_claw = false;
    std::string red_out;
    red->add_option("--k-max", red_k_max, "Largest reduced alphabet (inner size k-2)")->capture_default_str();
    red->add_option("--m-max", red_m_max, "Largest block length")->capture_default_str();
    red->add_option("--random", red_random, "Random instances to check")->capture_default_str();
    red->add_option("--seed", red_seed)->capture_default_str();
    red->add_flag("--emit", red_emit, "Write one reduced instance instead of checking");
    red->add_option("--n", red_n)->capture_default_str();
    red->add_option("--k", red_k)->capture_default_str();
    red->add_flag("--want-claw", red_want_claw);
    red->add_option("--out", red_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_gen(gen_spec, gen_out);
        if (*run) return cmd_run(run_spec, run_instance, run_depth, run_cost, run_format);
        if (*sweep) return cmd_sweep(sweep_cfg, sweep_cost, sweep_family, sweep_format, sweep_out);
        if (*fit) return cmd_fit(fit_in, fit_format, fit_tol);
        if (*expo) return cmd_exponents(i_max, grid_step);
        if (*conc) return cmd_concentration(conc_cfg, conc_format);
        if (*red) return cmd_reduce(red_k_max, red_m_max, red_random, red_seed, red_emit, red_n, red_k, red_want_claw, red_out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsage;
}
