#include "qcsp/init.hpp"

#include "qcsp/search.hpp"

#include <algorithm>
#include <numeric>

namespace qcsp {

Assignment clamp_to_eligible(const Instance& inst, Assignment a) {
    for (int j = 1; j <= inst.n; ++j) {
        const auto [lo, hi] = eligible_range(inst, inst.bay[j - 1]);
        a.crane[j - 1] = std::clamp(a.crane[j - 1], lo, hi);
    }
    return a;
}

Assignment s_load(const Instance& inst) {
    // even share comparison kept in integers: t <= sum(p)/m  <=>  t*m <= sum(p)
    const Time total = std::accumulate(inst.p.begin(), inst.p.end(), Time(0));
    Assignment a;
    a.crane.resize(inst.n);
    int k = 1;
    Time t = 0;
    for (int i = 1; i <= inst.n; ++i) {
        t += inst.p[i - 1];
        a.crane[i - 1] = k;
        if (t * inst.m > total && k < inst.m) {
            ++k;
            t = 0;
        }
    }
    return clamp_to_eligible(inst, a);
}

Assignment s_tasks(const Instance& inst) {
    const int base = inst.n / inst.m;
    const int extra = inst.n % inst.m;
    Assignment a;
    a.crane.resize(inst.n);
    int next = 1;
    for (int k = 1; k <= inst.m; ++k) {
        const int count = base + (k <= extra ? 1 : 0);
        for (int c = 0; c < count; ++c) a.crane[next++ - 1] = k;
    }
    return clamp_to_eligible(inst, a);
}

} // namespace qcsp
