#include "CLI11.hpp"

#include "qcsp/analysis.hpp"
#include "qcsp/feasibility.hpp"
#include "qcsp/harness.hpp"
#include "qcsp/init.hpp"
#include "qcsp/search.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qcsp;

// Ids shown to the user are the ones from their instance file; ids inside
// the library are canonical. These maps translate between the two.
struct IdMaps {
    std::vector<int> task_to_canon, task_from_canon;
    std::vector<int> crane_to_canon, crane_from_canon;
};

std::vector<int> invert(const std::vector<int>& map) {
    std::vector<int> inv(map.size());
    for (size_t raw = 0; raw < map.size(); ++raw) inv[map[raw] - 1] = int(raw) + 1;
    return inv;
}

IdMaps id_maps(const CanonicalInstance& ci) {
    return {ci.task_map, invert(ci.task_map), ci.crane_map, invert(ci.crane_map)};
}

std::string instance_name(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base.erase(dot);
    return base;
}

long long parse_ll(const std::string& tok, int line_no, const std::string& what) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw parse_error(line_no, "expected an integer " + what + ", got '" + tok + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

// Schedule file: CSV with header task,crane,start,completion; task and
// crane ids use the instance file's numbering.
Schedule read_schedule_csv(const std::string& path, const CanonicalInstance& ci,
                           const IdMaps& maps) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open schedule file '" + path + "'");

    const Instance& inst = ci.inst;
    Schedule sched;
    sched.assignment.crane.assign(inst.n, 0);
    sched.start.assign(inst.n, 0);
    sched.completion.assign(inst.n, 0);
    std::vector<char> seen(inst.n, 0);

    bool have_header = false;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        auto cells = split_csv(line);
        if (!have_header) {
            if (cells != std::vector<std::string>{"task", "crane", "start", "completion"})
                throw parse_error(line_no, "expected header 'task,crane,start,completion'");
            have_header = true;
            continue;
        }
        if (cells.size() != 4)
            throw parse_error(line_no, "expected 4 columns, got " +
                                           std::to_string(cells.size()));
        long long raw_task = parse_ll(cells[0], line_no, "task id");
        long long raw_crane = parse_ll(cells[1], line_no, "crane id");
        if (raw_task < 1 || raw_task > inst.n)
            throw parse_error(line_no, "task id " + cells[0] + " is outside 1.." +
                                           std::to_string(inst.n));
        if (raw_crane < 1 || raw_crane > inst.m)
            throw parse_error(line_no, "crane id " + cells[1] + " is outside 1.." +
                                           std::to_string(inst.m));
        const int task = maps.task_to_canon[raw_task - 1];
        if (seen[task - 1])
            throw parse_error(line_no, "task " + cells[0] + " listed twice");
        seen[task - 1] = 1;
        sched.assignment.crane[task - 1] = maps.crane_to_canon[raw_crane - 1];
        sched.start[task - 1] = parse_ll(cells[2], line_no, "start time");
        sched.completion[task - 1] = parse_ll(cells[3], line_no, "completion time");
    }
    if (!have_header) throw parse_error(line_no + 1, "missing header line");
    for (int i = 1; i <= inst.n; ++i)
        if (!seen[i - 1])
            throw parse_error(line_no + 1, "task " + std::to_string(maps.task_from_canon[i - 1]) +
                                               " has no row");
    for (Time c : sched.completion) sched.makespan = std::max(sched.makespan, c);
    return sched;
}

void write_schedule_csv(std::ostream& out, const Instance& inst, const Schedule& sched,
                        const IdMaps& maps) {
    out << "task,crane,start,completion\n";
    for (int raw = 1; raw <= inst.n; ++raw) {
        const int task = maps.task_to_canon[raw - 1];
        out << raw << ',' << maps.crane_from_canon[sched.assignment.crane[task - 1] - 1]
            << ',' << sched.start[task - 1] << ',' << sched.completion[task - 1] << '\n';
    }
}

void write_schedule_human(std::ostream& out, const Instance& inst, const Schedule& sched,
                          const IdMaps& maps) {
    out << "task  crane  bay  start  completion\n";
    for (int raw = 1; raw <= inst.n; ++raw) {
        const int task = maps.task_to_canon[raw - 1];
        out << std::left << std::setw(6) << raw << std::setw(7)
            << maps.crane_from_canon[sched.assignment.crane[task - 1] - 1] << std::setw(5)
            << inst.bay[task - 1] << std::setw(7) << sched.start[task - 1]
            << sched.completion[task - 1] << '\n';
    }
}

void print_violations(std::ostream& out, const ViolationReport& report,
                      const IdMaps& maps, bool csv) {
    auto task = [&](int i) { return i ? maps.task_from_canon[i - 1] : 0; };
    auto crane = [&](int k) { return k ? maps.crane_from_canon[k - 1] : 0; };
    if (csv) {
        out << "tag,i,j,v,w,slack\n";
        for (const Violation& v : report.violations)
            out << to_string(v.tag) << ',' << task(v.i) << ',' << task(v.j) << ','
                << crane(v.v) << ',' << crane(v.w) << ',' << v.slack << '\n';
        return;
    }
    for (const Violation& v : report.violations) {
        out << to_string(v.tag) << ": task " << task(v.i);
        if (v.j) out << ", task " << task(v.j);
        if (v.v) out << ", crane " << crane(v.v);
        if (v.w && v.w != v.v) out << ", crane " << crane(v.w);
        out << ", slack " << v.slack << '\n';
    }
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw input_error("cannot open output file '" + path + "'");
    return file;
}

DirectionMode direction_from(const std::string& name) {
    if (name == "best") return DirectionMode::best_of_two;
    if (name == "upward") return DirectionMode::upward_only;
    throw input_error("direction must be best or upward, got '" + name + "'");
}

void write_bench_human(std::ostream& out, const std::vector<RunReport>& rows) {
    out << std::left << std::setw(12) << "instance" << std::setw(6) << "reps"
        << std::setw(10) << "mean" << std::setw(7) << "best" << std::setw(7) << "worst"
        << std::setw(9) << "rg_mean" << std::setw(9) << "rg_best" << std::setw(10)
        << "rg_worst" << std::setw(10) << "ref" << std::setw(13) << "ref_kind"
        << "time_mean_s\n";
    for (const RunReport& row : rows) {
        std::ostringstream mean, rg_mean, rg_best, rg_worst, ref, time_s;
        mean << std::fixed << std::setprecision(2) << row.mean;
        rg_mean << std::fixed << std::setprecision(2) << row.rg_mean;
        rg_best << std::fixed << std::setprecision(2) << row.rg_best;
        rg_worst << std::fixed << std::setprecision(2) << row.rg_worst;
        ref << std::fixed << std::setprecision(2) << row.ref;
        time_s << std::fixed << std::setprecision(3) << row.time_mean_s;
        out << std::left << std::setw(12) << row.instance_name << std::setw(6) << row.reps
            << std::setw(10) << mean.str() << std::setw(7) << row.best << std::setw(7)
            << row.worst << std::setw(9) << rg_mean.str() << std::setw(9) << rg_best.str()
            << std::setw(10) << rg_worst.str() << std::setw(10) << ref.str()
            << std::setw(13) << (row.ref_kind.empty() ? "-" : row.ref_kind)
            << time_s.str() << '\n';
    }
}

int run(int argc, char** argv) {
    CLI::App app{"quay crane scheduling toolkit"};
    app.require_subcommand(1);

    GeneratorConfig gen_cfg;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "generate a random instance");
    gen->add_option("--n", gen_cfg.n, "number of tasks");
    gen->add_option("--m", gen_cfg.m, "number of cranes");
    gen->add_option("--pmin", gen_cfg.p_min, "smallest processing time");
    gen->add_option("--pmax", gen_cfg.p_max, "largest processing time");
    gen->add_option("--delta", gen_cfg.delta, "safety margin in bays");
    gen->add_option("--t0", gen_cfg.t0, "travel time per bay");
    gen->add_option("--seed", gen_cfg.seed, "RNG seed");
    gen->add_option("--out,-o", gen_out, "output file (default stdout)");

    std::string solve_instance, solve_params, solve_direction, solve_format = "human";
    std::string solve_out_schedule, solve_gantt, solve_gantt_format = "text";
    std::uint64_t solve_seed = 0;
    bool solve_seed_set = false;
    auto* solve = app.add_subcommand("solve", "run the search on an instance");
    solve->add_option("instance", solve_instance, "instance file")->required();
    solve->add_option("--params", solve_params, "parameter file (key = value lines)");
    solve->add_option("--seed", solve_seed, "RNG seed")
        ->each([&](const std::string&) { solve_seed_set = true; });
    solve->add_option("--direction", solve_direction, "decode direction: best or upward");
    solve->add_option("--format", solve_format, "output format: human or csv")
        ->check(CLI::IsMember({"human", "csv"}));
    solve->add_option("--out-schedule", solve_out_schedule, "write the schedule CSV here");
    solve->add_option("--gantt", solve_gantt, "write a Gantt chart here");
    solve->add_option("--gantt-format", solve_gantt_format, "Gantt style: text or svg")
        ->check(CLI::IsMember({"text", "svg"}));

    std::string check_instance, check_schedule, check_assignment, check_params;
    std::string check_format = "human";
    std::uint64_t check_seed = 0;
    auto* check_cmd = app.add_subcommand("check", "verify a schedule against an instance");
    check_cmd->add_option("instance", check_instance, "instance file")->required();
    check_cmd->add_option("--schedule", check_schedule, "schedule CSV to verify");
    check_cmd->add_option("--assignment", check_assignment,
                          "comma-separated crane per task; decoded, then verified");
    check_cmd->add_option("--params", check_params, "parameter file (key = value lines)");
    check_cmd->add_option("--seed", check_seed, "RNG seed");
    check_cmd->add_option("--format", check_format, "output format: human or csv")
        ->check(CLI::IsMember({"human", "csv"}));

    std::vector<std::string> bench_instances;
    std::string bench_refs, bench_params, bench_out, bench_format = "csv";
    BenchConfig bench_cfg;
    auto* bench = app.add_subcommand("bench", "replicated benchmark runs");
    bench->add_option("instances", bench_instances, "instance files")->required();
    bench->add_option("--reps", bench_cfg.reps, "replications per instance");
    bench->add_option("--seed", bench_cfg.base_seed, "seed of the first replication");
    bench->add_option("--workers", bench_cfg.workers, "parallel workers");
    bench->add_option("--refs", bench_refs, "reference value file");
    bench->add_option("--params", bench_params, "parameter file (key = value lines)");
    bench->add_flag("--stable-output", bench_cfg.stable_output,
                    "zero the timing column so output is byte-reproducible");
    bench->add_option("--out,-o", bench_out, "output file (default stdout)");
    bench->add_option("--format", bench_format, "output format: csv or human")
        ->check(CLI::IsMember({"human", "csv"}));

    std::string lb_instance, lb_params, lb_format = "human";
    std::uint64_t lb_budget = 20'000'000, lb_seed = 0;
    auto* lb = app.add_subcommand("lb", "lower bound on the optimal makespan");
    lb->add_option("instance", lb_instance, "instance file")->required();
    lb->add_option("--budget", lb_budget, "search node budget");
    lb->add_option("--params", lb_params, "parameter file (unused)");
    lb->add_option("--seed", lb_seed, "RNG seed (unused)");
    lb->add_option("--format", lb_format, "output format: human or csv")
        ->check(CLI::IsMember({"human", "csv"}));

    std::string gantt_instance, gantt_schedule, gantt_params, gantt_out;
    std::string gantt_format = "text";
    std::uint64_t gantt_seed = 0;
    auto* gantt = app.add_subcommand("gantt", "draw a schedule as a Gantt chart");
    gantt->add_option("instance", gantt_instance, "instance file")->required();
    gantt->add_option("--schedule", gantt_schedule,
                      "schedule CSV (omitted: solve the instance first)");
    gantt->add_option("--params", gantt_params, "parameter file (key = value lines)");
    gantt->add_option("--seed", gantt_seed, "RNG seed when solving");
    gantt->add_option("--format", gantt_format, "chart style: text or svg")
        ->check(CLI::IsMember({"text", "svg"}));
    gantt->add_option("--out,-o", gantt_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*gen) {
        Instance inst = generate_instance(gen_cfg);
        std::ofstream file;
        write_instance(open_out(file, gen_out), inst);
        return 0;
    }

    if (*solve) {
        SearchParams params;
        if (!solve_params.empty()) params = parse_params_file(solve_params, params);
        if (solve_seed_set) params.seed = solve_seed;
        if (!solve_direction.empty()) params.direction = direction_from(solve_direction);
        CanonicalInstance ci = parse_instance_file_full(solve_instance);
        const IdMaps maps = id_maps(ci);
        SolveResult res = mgeo_solve(ci.inst, params);
        if (!solve_out_schedule.empty()) {
            std::ofstream file(solve_out_schedule);
            if (!file)
                throw input_error("cannot open output file '" + solve_out_schedule + "'");
            write_schedule_csv(file, ci.inst, res.schedule, maps);
        }
        if (!solve_gantt.empty()) {
            std::ofstream file(solve_gantt);
            if (!file) throw input_error("cannot open output file '" + solve_gantt + "'");
            emit_gantt(file, ci.inst, res.schedule,
                       solve_gantt_format == "svg" ? GanttFormat::svg : GanttFormat::text);
        }
        if (solve_format == "csv") {
            write_schedule_csv(std::cout, ci.inst, res.schedule, maps);
        } else {
            std::cout << "makespan " << res.best << '\n'
                      << "direction "
                      << (res.schedule.direction == Direction::upward ? "upward"
                                                                      : "downward")
                      << '\n'
                      << "iterations " << res.iterations << '\n'
                      << "seed " << res.seed << '\n';
            write_schedule_human(std::cout, ci.inst, res.schedule, maps);
        }
        return 0;
    }

    if (*check_cmd) {
        if (check_schedule.empty() == check_assignment.empty())
            throw input_error("check needs exactly one of --schedule and --assignment");
        CanonicalInstance ci = parse_instance_file_full(check_instance);
        const IdMaps maps = id_maps(ci);
        Schedule sched;
        if (!check_schedule.empty()) {
            sched = read_schedule_csv(check_schedule, ci, maps);
        } else {
            SearchParams params;
            if (!check_params.empty()) params = parse_params_file(check_params, params);
            auto cells = split_csv(check_assignment);
            if (static_cast<int>(cells.size()) != ci.inst.n)
                throw input_error("assignment lists " + std::to_string(cells.size()) +
                                  " cranes for " + std::to_string(ci.inst.n) + " tasks");
            Assignment a;
            a.crane.resize(ci.inst.n);
            for (int raw = 1; raw <= ci.inst.n; ++raw) {
                long long k = parse_ll(cells[raw - 1], 1, "crane id");
                if (k < 1 || k > ci.inst.m)
                    throw input_error("crane id " + cells[raw - 1] + " is outside 1.." +
                                      std::to_string(ci.inst.m));
                a.crane[maps.task_to_canon[raw - 1] - 1] =
                    maps.crane_to_canon[static_cast<int>(k) - 1];
            }
            sched = decode(ci.inst, a, params.direction);
        }
        ViolationReport report = check(ci.inst, sched);
        if (report.feasible()) {
            if (check_format == "csv") {
                std::cout << "tag,i,j,v,w,slack\n";
                if (!check_schedule.empty()) return 0;
                write_schedule_csv(std::cout, ci.inst, sched, maps);
            } else {
                std::cout << "feasible, makespan " << makespan(sched) << '\n';
                if (check_assignment.empty()) return 0;
                write_schedule_human(std::cout, ci.inst, sched, maps);
            }
            return 0;
        }
        print_violations(std::cout, report, maps, check_format == "csv");
        return 1;
    }

    if (*bench) {
        if (!bench_params.empty())
            bench_cfg.params = parse_params_file(bench_params, bench_cfg.params);
        std::map<std::string, ReferenceValue> refs;
        if (!bench_refs.empty()) refs = parse_references_file(bench_refs);
        std::vector<RunReport> rows;
        rows.reserve(bench_instances.size());
        for (const std::string& path : bench_instances) {
            Instance inst = parse_instance_file(path);
            const std::string name = instance_name(path);
            std::optional<ReferenceValue> ref;
            if (auto it = refs.find(name); it != refs.end()) {
                ref = it->second;
            } else {
                ReferenceValue fallback;
                fallback.value = static_cast<double>(lower_bound(inst));
                fallback.is_optimum = false;
                fallback.best_known = 0;
                ref = fallback;
            }
            rows.push_back(run_benchmark(inst, name, bench_cfg, ref));
        }
        std::ofstream file;
        std::ostream& out = open_out(file, bench_out);
        if (bench_format == "csv")
            write_csv(out, rows);
        else
            write_bench_human(out, rows);
        return 0;
    }

    if (*lb) {
        Instance inst = parse_instance_file(lb_instance);
        Time bound = lower_bound(inst, lb_budget);
        if (lb_format == "csv")
            std::cout << "instance,lower_bound\n" << instance_name(lb_instance) << ','
                      << bound << '\n';
        else
            std::cout << "lower bound " << bound << '\n';
        return 0;
    }

    if (*gantt) {
        CanonicalInstance ci = parse_instance_file_full(gantt_instance);
        const IdMaps maps = id_maps(ci);
        Schedule sched;
        if (!gantt_schedule.empty()) {
            sched = read_schedule_csv(gantt_schedule, ci, maps);
        } else {
            SearchParams params;
            if (!gantt_params.empty()) params = parse_params_file(gantt_params, params);
            params.seed = gantt_seed;
            sched = mgeo_solve(ci.inst, params).schedule;
        }
        std::ofstream file;
        emit_gantt(open_out(file, gantt_out), ci.inst, sched,
                   gantt_format == "svg" ? GanttFormat::svg : GanttFormat::text);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
