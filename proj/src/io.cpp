#include "qcsp/harness.hpp"

#include "qcsp/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qcsp {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

long long parse_int(const std::string& tok, int line_no, const std::string& what) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw parse_error(line_no, "expected an integer " + what + ", got '" + tok + "'");
    return v;
}

int parse_id(const std::string& tok, int line_no, const std::string& what, int max) {
    long long v = parse_int(tok, line_no, what);
    if (v < 1 || v > max)
        throw parse_error(line_no, what + " " + tok + " is outside 1.." + std::to_string(max));
    return static_cast<int>(v);
}

double parse_double(const std::string& tok, int line_no, const std::string& what) {
    try {
        size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw parse_error(line_no, "expected a number " + what + ", got '" + tok + "'");
    }
}

} // namespace

CanonicalInstance parse_instance_full(std::istream& in) {
    Instance raw;
    std::vector<char> task_seen, crane_seen;
    bool have_header = false;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(strip_comment(line));
        if (toks.empty()) continue;

        if (!have_header) {
            if (toks.size() != 5)
                throw parse_error(line_no, "expected header '<n> <m> <l> <delta> <t0>'");
            long long n = parse_int(toks[0], line_no, "task count");
            long long m = parse_int(toks[1], line_no, "crane count");
            long long l = parse_int(toks[2], line_no, "bay count");
            long long delta = parse_int(toks[3], line_no, "safety margin");
            long long t0 = parse_int(toks[4], line_no, "travel time");
            if (n < 1 || n > 100000) throw parse_error(line_no, "task count out of range");
            if (m < 1 || m > 10000) throw parse_error(line_no, "crane count out of range");
            if (l < 1 || l > 1000000) throw parse_error(line_no, "bay count out of range");
            if (delta < 0 || delta > 1000000)
                throw parse_error(line_no, "safety margin out of range");
            if (t0 < 0) throw parse_error(line_no, "travel time must be non-negative");
            raw.n = static_cast<int>(n);
            raw.m = static_cast<int>(m);
            raw.l = static_cast<int>(l);
            raw.delta = static_cast<int>(delta);
            raw.t0 = t0;
            raw.p.assign(raw.n, 0);
            raw.bay.assign(raw.n, 0);
            raw.crane_pos0.assign(raw.m, 0);
            raw.crane_ready.assign(raw.m, 0);
            task_seen.assign(raw.n, 0);
            crane_seen.assign(raw.m, 0);
            have_header = true;
            continue;
        }

        const std::string& kind = toks[0];
        if (kind == "task") {
            if (toks.size() != 4)
                throw parse_error(line_no, "expected 'task <id> <bay> <ptime>'");
            int id = parse_id(toks[1], line_no, "task id", raw.n);
            if (task_seen[id - 1])
                throw parse_error(line_no, "task " + toks[1] + " declared twice");
            task_seen[id - 1] = 1;
            int bay = parse_id(toks[2], line_no, "bay", raw.l);
            long long p = parse_int(toks[3], line_no, "processing time");
            if (p < 1) throw parse_error(line_no, "processing time must be positive");
            raw.bay[id - 1] = bay;
            raw.p[id - 1] = p;
        } else if (kind == "crane") {
            if (toks.size() != 4)
                throw parse_error(line_no, "expected 'crane <id> <bay0> <ready>'");
            int id = parse_id(toks[1], line_no, "crane id", raw.m);
            if (crane_seen[id - 1])
                throw parse_error(line_no, "crane " + toks[1] + " declared twice");
            crane_seen[id - 1] = 1;
            int bay0 = parse_id(toks[2], line_no, "bay", raw.l);
            long long ready = parse_int(toks[3], line_no, "ready time");
            if (ready < 0) throw parse_error(line_no, "ready time must be non-negative");
            raw.crane_pos0[id - 1] = bay0;
            raw.crane_ready[id - 1] = ready;
        } else if (kind == "prec" || kind == "nonsim") {
            if (toks.size() != 3)
                throw parse_error(line_no, "expected '" + kind + " <i> <j>'");
            int i = parse_id(toks[1], line_no, "task id", raw.n);
            int j = parse_id(toks[2], line_no, "task id", raw.n);
            if (i == j)
                throw parse_error(line_no, "pair repeats task " + toks[1]);
            if (kind == "prec")
                raw.phi.emplace_back(i, j);
            else
                raw.psi.emplace_back(i, j);
        } else {
            throw parse_error(line_no, "unknown directive '" + kind + "'");
        }
    }

    if (!have_header) throw parse_error(line_no + 1, "missing header line");
    for (int i = 1; i <= raw.n; ++i)
        if (!task_seen[i - 1])
            throw parse_error(line_no + 1, "task " + std::to_string(i) + " was never declared");
    for (int k = 1; k <= raw.m; ++k)
        if (!crane_seen[k - 1])
            throw parse_error(line_no + 1, "crane " + std::to_string(k) + " was never declared");

    return canonicalize(std::move(raw));
}

Instance parse_instance(std::istream& in) { return parse_instance_full(in).inst; }

CanonicalInstance parse_instance_file_full(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open instance file '" + path + "'");
    return parse_instance_full(in);
}

Instance parse_instance_file(const std::string& path) {
    return parse_instance_file_full(path).inst;
}

void write_instance(std::ostream& out, const Instance& inst) {
    out << inst.n << ' ' << inst.m << ' ' << inst.l << ' ' << inst.delta << ' ' << inst.t0
        << '\n';
    for (int i = 1; i <= inst.n; ++i)
        out << "task " << i << ' ' << inst.bay[i - 1] << ' ' << inst.p[i - 1] << '\n';
    for (int k = 1; k <= inst.m; ++k)
        out << "crane " << k << ' ' << inst.crane_pos0[k - 1] << ' ' << inst.crane_ready[k - 1]
            << '\n';
    for (const auto& [i, j] : inst.phi) out << "prec " << i << ' ' << j << '\n';
    for (const auto& [i, j] : inst.psi) out << "nonsim " << i << ' ' << j << '\n';
}

void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open output file '" + path + "'");
    write_instance(out, inst);
    if (!out) throw input_error("failed writing to '" + path + "'");
}

Instance generate_instance(const GeneratorConfig& cfg) {
    if (cfg.n < 1) throw input_error("generator needs at least one task");
    if (cfg.m < 1) throw input_error("generator needs at least one crane");
    if (cfg.p_min < 1 || cfg.p_min > cfg.p_max)
        throw input_error("generator needs 1 <= p_min <= p_max");
    if (cfg.delta < 0) throw input_error("safety margin must be non-negative");
    if (cfg.t0 < 0) throw input_error("travel time must be non-negative");

    const int l = cfg.n;
    const int gap = cfg.delta + 1;
    if (l < 1 + (cfg.m - 1) * gap)
        throw input_error(std::to_string(cfg.m) + " cranes with safety margin " +
                          std::to_string(cfg.delta) + " do not fit in " + std::to_string(l) +
                          " bays");

    std::mt19937_64 rng(cfg.seed);

    Instance raw;
    raw.n = cfg.n;
    raw.m = cfg.m;
    raw.l = l;
    raw.delta = cfg.delta;
    raw.t0 = cfg.t0;

    raw.bay.resize(cfg.n);
    for (int i = 0; i < cfg.n; ++i)
        raw.bay[i] = 1 + static_cast<int>(uniform_below(rng, l));
    std::sort(raw.bay.begin(), raw.bay.end());

    raw.p.resize(cfg.n);
    const std::uint64_t span = static_cast<std::uint64_t>(cfg.p_max - cfg.p_min) + 1;
    for (int i = 0; i < cfg.n; ++i)
        raw.p[i] = cfg.p_min + static_cast<Time>(uniform_below(rng, span));

    // same-bay tasks form an operation chain and exclude one another
    for (int i = 0; i < cfg.n; ++i) {
        for (int j = i + 1; j < cfg.n && raw.bay[j] == raw.bay[i]; ++j) {
            if (j == i + 1) raw.phi.emplace_back(i + 1, j + 1);
            raw.psi.emplace_back(i + 1, j + 1);
        }
    }

    // cranes evenly spread, then pushed apart to restore the margin
    raw.crane_pos0.resize(cfg.m);
    raw.crane_ready.assign(cfg.m, 0);
    for (int k = 1; k <= cfg.m; ++k) {
        int pos = static_cast<int>((2LL * k * l + cfg.m) / (2LL * cfg.m));
        raw.crane_pos0[k - 1] = std::clamp(pos, 1, l);
    }
    for (int k = cfg.m - 1; k >= 1; --k)
        raw.crane_pos0[k - 1] =
            std::min(raw.crane_pos0[k - 1], raw.crane_pos0[k] - gap);
    raw.crane_pos0[0] = std::max(raw.crane_pos0[0], 1);
    for (int k = 2; k <= cfg.m; ++k)
        raw.crane_pos0[k - 1] =
            std::max(raw.crane_pos0[k - 1], raw.crane_pos0[k - 2] + gap);

    return make_instance(std::move(raw));
}

SearchParams parse_params(std::istream& in, SearchParams base) {
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw parse_error(line_no, "expected 'key = value'");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw parse_error(line_no, "expected 'key = value'");

        if (key == "tau") {
            double tau = parse_double(value, line_no, "for tau");
            if (tau <= 0) throw parse_error(line_no, "tau must be positive");
            base.tau = tau;
        } else if (key == "max_iters") {
            long long v = parse_int(value, line_no, "for max_iters");
            if (v < 1 || v > std::numeric_limits<int>::max())
                throw parse_error(line_no, "max_iters must be a positive integer");
            base.max_iters = static_cast<int>(v);
        } else if (key == "max_stall") {
            long long v = parse_int(value, line_no, "for max_stall");
            if (v < 1 || v > std::numeric_limits<int>::max())
                throw parse_error(line_no, "max_stall must be a positive integer");
            base.max_stall = static_cast<int>(v);
        } else if (key == "mutation_policy") {
            if (value == "cycling")
                base.policy = MutationPolicy::cycling();
            else if (value == "fixed1")
                base.policy = MutationPolicy::fixed(1);
            else if (value == "fixed2")
                base.policy = MutationPolicy::fixed(2);
            else if (value == "fixed3")
                base.policy = MutationPolicy::fixed(3);
            else
                throw parse_error(line_no, "mutation_policy must be fixed1, fixed2, fixed3 "
                                           "or cycling, got '" + value + "'");
        } else if (key == "direction_mode") {
            if (value == "best")
                base.direction = DirectionMode::best_of_two;
            else if (value == "upward")
                base.direction = DirectionMode::upward_only;
            else
                throw parse_error(line_no,
                                  "direction_mode must be best or upward, got '" + value + "'");
        } else {
            throw parse_error(line_no, "unknown parameter '" + key + "'");
        }
    }
    return base;
}

SearchParams parse_params_file(const std::string& path, SearchParams base) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open parameter file '" + path + "'");
    return parse_params(in, base);
}

std::map<std::string, ReferenceValue> parse_references(std::istream& in) {
    std::map<std::string, ReferenceValue> refs;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() != 4)
            throw parse_error(line_no, "expected '<id> <value> opt|lb <best_known>'");
        ReferenceValue ref;
        ref.value = parse_double(toks[1], line_no, "for the reference value");
        if (ref.value <= 0)
            throw parse_error(line_no, "reference value must be positive");
        if (toks[2] == "opt")
            ref.is_optimum = true;
        else if (toks[2] == "lb")
            ref.is_optimum = false;
        else
            throw parse_error(line_no, "reference kind must be opt or lb, got '" + toks[2] + "'");
        ref.best_known = parse_double(toks[3], line_no, "for the best known value");
        if (ref.best_known <= 0)
            throw parse_error(line_no, "best known value must be positive");
        if (!refs.emplace(toks[0], ref).second)
            throw parse_error(line_no, "duplicate reference id '" + toks[0] + "'");
    }
    return refs;
}

std::map<std::string, ReferenceValue> parse_references_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open reference file '" + path + "'");
    return parse_references(in);
}

} // namespace qcsp
