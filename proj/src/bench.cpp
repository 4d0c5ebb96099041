#include "qcsp/harness.hpp"

#include "qcsp/analysis.hpp"
#include "qcsp/feasibility.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

namespace qcsp {

namespace {

std::string fixed_decimals(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string policy_name(const MutationPolicy& policy) {
    if (policy.cycle == MutationPolicy::cycling().cycle) return "cycling";
    if (policy.cycle.size() == 1) return "fixed" + std::to_string(policy.cycle[0]);
    std::string out;
    for (size_t i = 0; i < policy.cycle.size(); ++i)
        out += (i ? "," : "") + std::to_string(policy.cycle[i]);
    return out;
}

std::string echo_params(const SearchParams& params) {
    std::ostringstream out;
    out << "tau=" << params.tau << " max_iters=" << params.max_iters << " max_stall="
        << params.max_stall << " mutation_policy=" << policy_name(params.policy)
        << " direction_mode="
        << (params.direction == DirectionMode::best_of_two ? "best" : "upward");
    return out.str();
}

} // namespace

RunReport run_benchmark(const Instance& inst, const std::string& name,
                        const BenchConfig& cfg,
                        const std::optional<ReferenceValue>& ref) {
    if (cfg.reps < 1) throw input_error("benchmark needs at least one repetition");
    if (cfg.workers < 1) throw input_error("benchmark needs at least one worker");

    const int reps = cfg.reps;
    std::vector<SolveResult> results(reps);
    std::vector<double> elapsed(reps, 0.0);
    std::vector<std::exception_ptr> errors(reps);
    std::atomic<int> next{0};

    auto work = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= reps) return;
            try {
                SearchParams params = cfg.params;
                params.seed = cfg.base_seed + static_cast<std::uint64_t>(idx);
                const auto t_start = std::chrono::steady_clock::now();
                results[idx] = mgeo_solve(inst, params);
                const auto t_end = std::chrono::steady_clock::now();
                elapsed[idx] = std::chrono::duration<double>(t_end - t_start).count();
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
    };

    const int workers = std::min(cfg.workers, reps);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    RunReport report;
    report.instance_name = name;
    report.reps = reps;
    report.seeds.resize(reps);

    Time best = 0, worst = 0;
    double sum = 0, time_sum = 0;
    for (int idx = 0; idx < reps; ++idx) {
        const SolveResult& res = results[idx];
        const ViolationReport verdict = check(inst, res.schedule);
        if (!verdict.feasible()) {
            std::ostringstream msg;
            msg << "run with seed " << res.seed << " on '" << name
                << "' produced an infeasible schedule:";
            for (const Violation& v : verdict.violations)
                msg << ' ' << to_string(v.tag) << "(i=" << v.i << ",j=" << v.j
                    << ",slack=" << v.slack << ")";
            throw std::runtime_error(msg.str());
        }
        report.seeds[idx] = res.seed;
        sum += static_cast<double>(res.best);
        time_sum += elapsed[idx];
        if (idx == 0 || res.best < best) best = res.best;
        if (idx == 0 || res.best > worst) worst = res.best;
    }

    report.mean = sum / reps;
    report.best = best;
    report.worst = worst;
    report.time_mean_s = cfg.stable_output ? 0.0 : time_sum / reps;
    report.time_total_s = cfg.stable_output ? 0.0 : time_sum;
    report.params_echo = echo_params(cfg.params);
    if (ref) {
        report.ref = ref->value;
        report.ref_kind = ref->is_optimum ? "optimum" : "lower-bound";
        report.rg_mean = relative_gap(report.mean, ref->value);
        report.rg_best = relative_gap(static_cast<double>(best), ref->value);
        report.rg_worst = relative_gap(static_cast<double>(worst), ref->value);
    }
    return report;
}

void write_csv(std::ostream& out, const std::vector<RunReport>& rows) {
    out << "instance,reps,mean,best,worst,rg_mean,rg_best,rg_worst,ref,ref_kind,"
           "time_mean_s,seeds\n";
    for (const RunReport& row : rows) {
        out << row.instance_name << ',' << row.reps << ',' << fixed_decimals(row.mean, 2)
            << ',' << row.best << ',' << row.worst << ',' << fixed_decimals(row.rg_mean, 2)
            << ',' << fixed_decimals(row.rg_best, 2) << ','
            << fixed_decimals(row.rg_worst, 2) << ',' << fixed_decimals(row.ref, 2) << ','
            << row.ref_kind << ',' << fixed_decimals(row.time_mean_s, 3) << ',';
        for (size_t idx = 0; idx < row.seeds.size(); ++idx) {
            if (idx > 0) out << '|';
            out << row.seeds[idx];
        }
        out << '\n';
    }
}

} // namespace qcsp
