#pragma once

#include "qcsp/decode.hpp"
#include "qcsp/instance.hpp"
#include "qcsp/schedule.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qcsp {

// How many tasks to perturb per outer iteration. cycling() rotates
// through 1, 2, 3; fixed(k) always perturbs k tasks.
struct MutationPolicy {
    std::vector<int> cycle;

    static MutationPolicy fixed(int k) { return {{k}}; }
    static MutationPolicy cycling() { return {{1, 2, 3}}; }

    int size_for(int iter) const { return cycle[iter % cycle.size()]; }
};

struct SearchParams {
    double tau = 5.0;            // rank-selection pressure
    int max_iters = 200;         // outer iteration budget
    int max_stall = 50;          // stop after this many cycles without improvement
    MutationPolicy policy = MutationPolicy::cycling();
    std::uint64_t seed = 0;
    DirectionMode direction = DirectionMode::best_of_two;
};

// Cranes that can serve a task at the given bay without pushing any
// crane off the rails: near the low end of the quay only low-numbered
// cranes fit below, near the high end only high-numbered cranes fit
// above. Returns the inclusive crane range as a vector of ids and
// throws input_error if no crane can reach the bay.
std::vector<int> eligible_cranes(const Instance& inst, int bay);

// Inclusive bounds of eligible_cranes().
std::pair<int, int> eligible_range(const Instance& inst, int bay);

// eligible_cranes() for every task; result[t-1] is task t's set.
std::vector<std::vector<int>> eligible_sets(const Instance& inst);

// Draws a sorted set of `count` distinct task ids.
std::vector<int> select_mutation_set(int n, int count, std::mt19937_64& rng);

// One candidate move and its decoded quality.
struct NeighborEntry {
    Assignment assignment;
    Time makespan = 0;
    bool decodable = true;
};

// All assignments that differ from `base` on at least one task in
// `tasks` (every combination of their eligible cranes except the
// incumbent one), each decoded. Sorted ascending by makespan; the sort
// is stable so ties keep generation order. Assignments that decode in
// neither direction are dropped.
std::vector<NeighborEntry> generate_neighbors(const Instance& inst,
                                              const Assignment& base,
                                              const std::vector<int>& tasks,
                                              const std::vector<std::vector<int>>& eligible,
                                              DirectionMode mode);

// Power-law rank selection: repeatedly draws a uniform rank r in
// 1..size and accepts it with probability r^(-tau). Returns the
// accepted 0-based index.
int rank_select(int size, double tau, std::mt19937_64& rng);

// Progress of the search at the end of each outer iteration.
struct TracePoint {
    int iter = 0;
    Time incumbent = 0;
    Time best = 0;
};

struct SolveResult {
    Time best = 0;
    Schedule schedule;
    std::vector<TracePoint> trace;
    int iterations = 0;
    std::uint64_t seed = 0;
};

// Extremal-optimization search over crane assignments. Starts from the
// workload-split seed, perturbs a mutation set per policy each
// iteration, moves via rank selection, and keeps the best schedule
// seen. Stops on the iteration budget or after max_stall cycles
// without improving the best.
SolveResult mgeo_solve(const Instance& inst, const SearchParams& params);

// The fixed-mutation-size ancestor of mgeo_solve: the same loop, but
// the policy must hold a single size. Size 1 scans tasks 1..n
// deterministically each iteration; sizes 2 and 3 draw random sets.
SolveResult geo_solve(const Instance& inst, const SearchParams& params);

} // namespace qcsp
