#include "clawlab/bench.hpp"

#include "clawlab/exponents.hpp"
#include "clawlab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace clawlab {

void SweepConfig::validate() const {
    if (n_list.empty() || kappa_list.empty() || depth_list.empty())
        throw std::invalid_argument("sweep lists must be non-empty");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    for (int d : depth_list)
        if (d < 0) throw std::invalid_argument("depth must be >= 0");
    cost.validate();
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

SweepRow run_trial(const SweepConfig& cfg, std::int64_t n, std::size_t kappa_index, int depth, std::int64_t trial) {
    const double kappa = cfg.kappa_list.at(kappa_index);
    InstanceSpec spec;
    spec.n = n;
    spec.kappa = kappa;
    spec.family = cfg.family;
    spec.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(n), kappa_index, static_cast<std::uint64_t>(trial)});
    const ClawInstance inst = generate(spec);

    QueryLedger ledger;
    const AlgoParams params = make_params(inst.n(), inst.k(), depth, cfg.b_mode, cfg.sample_const);
    const RunResult res = run_Ai(inst, params, ledger, cfg.cost, derive_seed(spec.seed, {static_cast<std::uint64_t>(depth)}));

    SweepRow row;
    row.n = n;
    row.k = inst.k();
    row.kappa = kappa;
    row.depth = depth;
    row.trial = trial;
    row.decision = res.decision;
    row.truth = exact_claw(inst);
    row.correct = row.decision == row.truth;
    row.x_reads = ledger.x_reads();
    row.y_reads = ledger.y_reads();
    row.charged_cost = ledger.charged_cost();
    return row;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    struct Task {
        std::int64_t n;
        std::size_t kappa_index;
        int depth;
        std::int64_t trial;
    };
    std::vector<Task> tasks;
    for (auto n : cfg.n_list)
        for (std::size_t ki = 0; ki < cfg.kappa_list.size(); ++ki)
            for (int d : cfg.depth_list)
                for (std::int64_t t = 0; t < cfg.trials; ++t) tasks.push_back({n, ki, d, t});

    SweepResult out;
    out.rows.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                const auto& t = tasks[i];
                out.rows[i] = run_trial(cfg, t.n, t.kappa_index, t.depth, t.trial);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = tasks.size();
            }
        }
    };
    const unsigned workers = std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    out.summary = summarize_rows(out.rows);
    return out;
}

std::vector<SweepSummary> summarize_rows(const std::vector<SweepRow>& rows) {
    using Key = std::tuple<std::int64_t, double, int>;
    std::vector<Key> order;
    std::map<Key, std::vector<const SweepRow*>> groups;
    for (const auto& r : rows) {
        Key key{r.n, r.kappa, r.depth};
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) order.push_back(key);
        it->second.push_back(&r);
    }
    std::vector<SweepSummary> out;
    for (const auto& key : order) {
        const auto& g = groups[key];
        SweepSummary s;
        std::tie(s.n, s.kappa, s.depth) = key;
        s.k = g.front()->k;
        s.trials = static_cast<std::int64_t>(g.size());
        std::vector<double> costs;
        std::int64_t correct = 0;
        double total = 0;
        for (const auto* r : g) {
            correct += r->correct ? 1 : 0;
            total += r->charged_cost;
            costs.push_back(r->charged_cost);
        }
        std::sort(costs.begin(), costs.end());
        const std::size_t h = costs.size() / 2;
        s.success_rate = static_cast<double>(correct) / static_cast<double>(g.size());
        s.mean_cost = total / static_cast<double>(g.size());
        s.median_cost = costs.size() % 2 ? costs[h] : 0.5 * (costs[h - 1] + costs[h]);
        out.push_back(s);
    }
    return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
    out << kSweepCsvHeader << '\n';
    for (const auto& row : r.rows) {
        out << row.n << ',' << row.k << ',' << format_number(row.kappa) << ',' << row.depth << ',' << row.trial << ','
            << int(row.decision) << ',' << int(row.truth) << ',' << int(row.correct) << ',' << row.x_reads << ','
            << row.y_reads << ',' << format_number(row.charged_cost) << '\n';
    }
    out << '\n' << kSummaryCsvHeader << '\n';
    for (const auto& s : r.summary) {
        out << s.n << ',' << s.k << ',' << format_number(s.kappa) << ',' << s.depth << ',' << s.trials << ','
            << format_number(s.success_rate) << ',' << format_number(s.mean_cost) << ','
            << format_number(s.median_cost) << '\n';
    }
}

nlohmann::json sweep_to_json(const SweepResult& r) {
    nlohmann::json rows = nlohmann::json::array(), summary = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n},
                        {"k", row.k},
                        {"kappa", row.kappa},
                        {"depth", row.depth},
                        {"trial", row.trial},
                        {"decision", row.decision},
                        {"truth", row.truth},
                        {"correct", row.correct},
                        {"x_reads", row.x_reads},
                        {"y_reads", row.y_reads},
                        {"charged_cost", row.charged_cost}});
    }
    for (const auto& s : r.summary) {
        summary.push_back({{"n", s.n},
                           {"k", s.k},
                           {"kappa", s.kappa},
                           {"depth", s.depth},
                           {"trials", s.trials},
                           {"success_rate", s.success_rate},
                           {"mean_cost", s.mean_cost},
                           {"median_cost", s.median_cost}});
    }
    return {{"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

namespace {

template <class T>
T parse_field(const std::string& s, std::size_t line) {
    T v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError(line, "bad sweep field '" + s + "'");
    return v;
}

bool parse_flag(const std::string& s, std::size_t line) {
    if (s == "0" || s == "false") return false;
    if (s == "1" || s == "true") return true;
    throw ParseError(line, "bad boolean field '" + s + "'");
}

} // namespace

std::vector<SweepRow> read_sweep_rows(std::istream& in) {
    std::vector<SweepRow> rows;
    in >> std::ws;
    if (in.peek() == '{') {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(1, std::string("bad sweep JSON: ") + e.what());
        }
        for (const auto& r : j.at("rows")) {
            SweepRow row;
            row.n = r.at("n");
            row.k = r.at("k");
            row.kappa = r.at("kappa");
            row.depth = r.at("depth");
            row.trial = r.at("trial");
            row.decision = r.at("decision");
            row.truth = r.at("truth");
            row.correct = r.at("correct");
            row.x_reads = r.at("x_reads");
            row.y_reads = r.at("y_reads");
            row.charged_cost = r.at("charged_cost");
            rows.push_back(row);
        }
        return rows;
    }

    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != kSweepCsvHeader) throw ParseError(1, "expected sweep CSV header");
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;  // summary block follows
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 11) throw ParseError(line_no, "expected 11 fields, got " + std::to_string(f.size()));
        SweepRow row;
        row.n = parse_field<std::int64_t>(f[0], line_no);
        row.k = parse_field<std::int64_t>(f[1], line_no);
        row.kappa = parse_field<double>(f[2], line_no);
        row.depth = parse_field<int>(f[3], line_no);
        row.trial = parse_field<std::int64_t>(f[4], line_no);
        row.decision = parse_flag(f[5], line_no);
        row.truth = parse_flag(f[6], line_no);
        row.correct = parse_flag(f[7], line_no);
        row.x_reads = parse_field<std::int64_t>(f[8], line_no);
        row.y_reads = parse_field<std::int64_t>(f[9], line_no);
        row.charged_cost = parse_field<double>(f[10], line_no);
        rows.push_back(row);
    }
    return rows;
}

LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("least squares needs >= 2 paired points");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("least squares needs distinct x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

std::vector<FitResult> fit_sweep(const std::vector<SweepRow>& rows, std::vector<std::string>* warnings) {
    // (kappa, depth) -> n -> (sum, count)
    std::map<std::pair<double, int>, std::map<std::int64_t, std::pair<double, std::int64_t>>> groups;
    for (const auto& r : rows) {
        auto& cell = groups[{r.kappa, r.depth}][r.n];
        cell.first += r.charged_cost;
        cell.second += 1;
    }
    std::vector<FitResult> out;
    for (const auto& [key, by_n] : groups) {
        if (by_n.size() < 4) {
            if (warnings)
                warnings->push_back("skipping kappa=" + format_number(key.first) + " depth=" +
                                    std::to_string(key.second) + ": " + std::to_string(by_n.size()) +
                                    " distinct n values, need 4");
            continue;
        }
        std::vector<double> xs, ys;
        for (const auto& [n, acc] : by_n) {
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(std::log(acc.first / static_cast<double>(acc.second)));
        }
        const LinearFit lf = least_squares(xs, ys);
        FitResult f;
        f.kappa = key.first;
        f.depth = key.second;
        f.points = by_n.size();
        f.slope = lf.slope;
        f.intercept = lf.intercept;
        f.r2 = lf.r2;
        const Rational kq(key.first);
        f.predicted = exponent_T(key.second, kq).get_d();
        f.epsilon_achieved = Rational(exponent_T(key.second, kq) - limit_exponent(kq)).get_d();
        out.push_back(f);
    }
    return out;
}

nlohmann::json fit_to_json(const std::vector<FitResult>& fits) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : fits) {
        out.push_back({{"kappa", f.kappa},
                       {"i", f.depth},
                       {"points", f.points},
                       {"slope", f.slope},
                       {"intercept", f.intercept},
                       {"r2", f.r2},
                       {"predicted", f.predicted},
                       {"epsilon_achieved", f.epsilon_achieved}});
    }
    return out;
}

} // namespace clawlab
