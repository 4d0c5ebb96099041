#pragma once

#include "qcsp/instance.hpp"
#include "qcsp/schedule.hpp"
#include "qcsp/search.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcsp {

// Reads an instance from the plain-text format:
//
//   # comment
//   <n> <m> <l> <delta> <t0>
//   task <id> <bay> <ptime>     (n lines)
//   crane <id> <bay0> <ready>   (m lines)
//   prec <i> <j>                (any number)
//   nonsim <i> <j>              (any number)
//
// The result is canonicalized. Throws parse_error with the offending
// line number on malformed input. The _full variants keep the
// renumbering maps so callers can translate ids from a non-canonical
// file back and forth.
Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);
CanonicalInstance parse_instance_full(std::istream& in);
CanonicalInstance parse_instance_file_full(const std::string& path);

// Writes an instance in the same format.
void write_instance(std::ostream& out, const Instance& inst);
void write_instance_file(const std::string& path, const Instance& inst);

// Random instance generation, shaped like a container vessel plan:
// one bay per task slot, per-bay operation chains (discharge before
// load, deck before hold on discharge, hold before deck on load), all
// same-bay pairs non-simultaneous, cranes spread evenly along the quay.
struct GeneratorConfig {
    int n = 10;
    int m = 2;
    Time p_min = 3;
    Time p_max = 180;
    int delta = 1;
    Time t0 = 1;
    std::uint64_t seed = 0;
};

Instance generate_instance(const GeneratorConfig& cfg);

// Search parameter file: `key = value` lines, '#' comments. Recognized
// keys: tau, max_iters, max_stall, mutation_policy (fixed1, fixed2,
// fixed3 or cycling), direction_mode (best or upward). Unknown keys
// are an error.
SearchParams parse_params(std::istream& in, SearchParams base = {});
SearchParams parse_params_file(const std::string& path, SearchParams base = {});

// A published reference value for a benchmark instance: either a
// proven optimum or a lower bound, plus the best value reported so far.
struct ReferenceValue {
    double value = 0;      // optimum or lower bound
    bool is_optimum = false;
    double best_known = 0; // best published makespan
};

// Reference file format: `<id> <value> opt|lb <best_known>` per line,
// '#' comments.
std::map<std::string, ReferenceValue> parse_references(std::istream& in);
std::map<std::string, ReferenceValue> parse_references_file(const std::string& path);

// One benchmark row: repeated independent runs of the search on one
// instance.
struct BenchConfig {
    int reps = 30;
    std::uint64_t base_seed = 1;
    int workers = 1;  // worker threads; results merge deterministically
    SearchParams params;
    bool stable_output = false; // zero the timing columns for reproducible bytes
};

struct RunReport {
    std::string instance_name;
    int reps = 0;
    double mean = 0;
    Time best = 0;
    Time worst = 0;
    double rg_mean = 0;
    double rg_best = 0;
    double rg_worst = 0;
    double ref = 0;
    std::string ref_kind; // "optimum" or "lower-bound"
    double time_mean_s = 0;
    double time_total_s = 0;
    std::vector<std::uint64_t> seeds;
    std::string params_echo; // the solver configuration the runs used
};

// Runs the search `reps` times with seeds base_seed, base_seed+1, ...
// Every schedule is re-verified before entering the statistics; a
// violation aborts the run. The reference value (if present) feeds the
// relative-gap columns; without one the rg columns and ref are zero
// and ref_kind is empty.
RunReport run_benchmark(const Instance& inst, const std::string& name,
                        const BenchConfig& cfg,
                        const std::optional<ReferenceValue>& ref);

// CSV with the fixed header
// instance,reps,mean,best,worst,rg_mean,rg_best,rg_worst,ref,ref_kind,time_mean_s,seeds
// mean and gap columns use two decimals, time three, seeds joined by '|'.
void write_csv(std::ostream& out, const std::vector<RunReport>& rows);

enum class GanttFormat { text, svg };

// Renders a feasible schedule as a Gantt chart, one row per crane.
// Refuses (input_error) to render an infeasible schedule.
void emit_gantt(std::ostream& out, const Instance& inst, const Schedule& sched,
                GanttFormat format);

} // namespace qcsp
