#pragma once

#include "qcsp/types.hpp"

#include <vector>

namespace qcsp {

// Task-to-crane assignment; crane[t-1] is the crane serving task t.
struct Assignment {
    std::vector<int> crane;

    bool operator==(const Assignment&) const = default;
};

// Direction a schedule was decoded in. Downward schedules are decoded
// on the bay-mirrored instance and mapped back.
enum class Direction { upward, downward };

// A fully timed schedule for an instance.
struct Schedule {
    Assignment assignment;
    std::vector<Time> start;      // start[t-1] = start time of task t
    std::vector<Time> completion; // completion[t-1] = start + processing
    Direction direction = Direction::upward;
    Time makespan = 0;
};

} // namespace qcsp
