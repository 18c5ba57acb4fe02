#include "arc/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace arc {

const char* to_string(Archetype a) {
    switch (a) {
        case Archetype::Spike: return "SPIKE";
        case Archetype::Periodic: return "PERIODIC";
        case Archetype::Ramp: return "RAMP";
        case Archetype::Stationary: return "STATIONARY";
    }
    return "?";
}

Archetype archetype_from_string(const std::string& s) {
    if (s == "SPIKE") return Archetype::Spike;
    if (s == "PERIODIC") return Archetype::Periodic;
    if (s == "RAMP") return Archetype::Ramp;
    if (s == "STATIONARY") return Archetype::Stationary;
    throw ValidationError("unknown archetype tag: '" + s + "'");
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == delim) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::int64_t parse_int(const std::string& s, std::size_t line_no, const std::string& what) {
    if (s.empty()) throw ParseError("empty " + what + " field", line_no);
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad " + what + " value '" + s + "'", line_no);
    }
    if (pos != s.size()) throw ParseError("bad " + what + " value '" + s + "'", line_no);
    return v;
}

// Deterministic samplers on top of the raw mt19937_64 stream. The standard
// distributions are implementation-defined, so generated traces would not
// be portable across library versions.
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    }
    double normal() {  // Box-Muller, one draw per call pair
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare = r * std::sin(a);
        have_spare = true;
        return r * std::cos(a);
    }
    double exponential(double rate) { return -std::log(1.0 - uniform()) / rate; }

    std::mt19937_64 eng;
    double spare = 0.0;
    bool have_spare = false;
};

}  // namespace

std::vector<WorkloadTrace> load_trace_csv(const std::string& path, const TraceCsvSchema& schema,
                                          std::int64_t retention_floor) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open trace file: " + path);

    std::string line;
    std::size_t line_no = 0;

    // Header (absent only in a fully empty file).
    if (!std::getline(in, line)) return {};
    ++line_no;
    {
        auto cols = split_line(line, schema.delimiter);
        if (cols.size() != 3 || cols[0] != schema.id_column || cols[1] != schema.minute_column ||
            cols[2] != schema.count_column) {
            throw ParseError("expected header '" + schema.id_column + "," + schema.minute_column +
                                 "," + schema.count_column + "', got '" + line + "'",
                             line_no);
        }
    }

    // function_id -> sparse {minute -> count}; insertion order preserved for output.
    std::vector<std::string> order;
    std::unordered_map<std::string, std::map<std::int64_t, std::int64_t>> sparse;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto cols = split_line(line, schema.delimiter);
        if (cols.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(cols.size()), line_no);
        const std::string& fid = cols[0];
        if (fid.empty()) throw ParseError("empty function_id", line_no);
        std::int64_t minute = parse_int(cols[1], line_no, "minute_index");
        std::int64_t count = parse_int(cols[2], line_no, "invocations");
        if (minute < 0) throw ValidationError("negative minute_index at line " + std::to_string(line_no));
        if (count < 0) throw ValidationError("negative invocation count at line " + std::to_string(line_no));
        auto [it, inserted] = sparse.try_emplace(fid);
        if (inserted) order.push_back(fid);
        if (!it->second.emplace(minute, count).second)
            throw ValidationError("duplicate minute " + std::to_string(minute) + " for function '" +
                                  fid + "' at line " + std::to_string(line_no));
    }

    std::vector<WorkloadTrace> out;
    for (const auto& fid : order) {
        const auto& m = sparse[fid];
        std::int64_t total = 0;
        for (const auto& [minute, count] : m) total += count;
        if (total < retention_floor) continue;
        std::int64_t len = m.rbegin()->first + 1;
        WorkloadTrace t;
        t.function_id = fid;
        t.counts = ArrayXd::Zero(len);
        for (const auto& [minute, count] : m) t.counts[minute] = static_cast<double>(count);
        out.push_back(std::move(t));
    }
    return out;
}

void write_trace_csv(const std::string& path, const WorkloadTrace& trace,
                     const TraceCsvSchema& schema) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write trace file: " + path);
    const char d = schema.delimiter;
    out << schema.id_column << d << schema.minute_column << d << schema.count_column << "\n";
    for (std::int64_t i = 0; i < trace.counts.size(); ++i) {
        auto c = static_cast<std::int64_t>(trace.counts[i]);
        if (c == 0) continue;
        out << trace.function_id << d << i << d << c << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Window> slide_windows(const WorkloadTrace& trace, std::int64_t window_len,
                                  std::int64_t stride) {
    if (window_len < 2) throw ValidationError("window_len must be >= 2");
    if (stride < 1 || stride > window_len)
        throw ValidationError("stride must be in [1, window_len]");
    std::vector<Window> out;
    std::int64_t len = trace.counts.size();
    if (len < window_len) return out;
    std::int64_t n = (len - window_len) / stride + 1;
    out.reserve(n);
    for (std::int64_t i = 0; i < n; ++i) {
        Window w;
        w.function_id = trace.function_id;
        w.start_minute = i * stride;
        w.values = trace.counts.segment(w.start_minute, window_len);
        out.push_back(std::move(w));
    }
    return out;
}

void validate_spec(const SyntheticSpec& spec) {
    if (spec.duration_minutes < 1) throw ValidationError("duration_minutes must be >= 1");
    if (spec.base_rate < 0) throw ValidationError("base_rate must be >= 0");
    if (spec.noise_std < 0) throw ValidationError("noise_std must be >= 0");
    if (spec.archetype == Archetype::Periodic && spec.period_minutes <= 0)
        throw ValidationError("period_minutes must be > 0 for PERIODIC");
}

WorkloadTrace generate_synthetic(const SyntheticSpec& spec) {
    validate_spec(spec);
    const std::int64_t n = spec.duration_minutes;
    Rng rng(spec.rng_seed);

    ArrayXd v(n);
    switch (spec.archetype) {
        case Archetype::Stationary:
            for (std::int64_t t = 0; t < n; ++t) v[t] = spec.base_rate + spec.noise_std * rng.normal();
            break;
        case Archetype::Periodic:
            for (std::int64_t t = 0; t < n; ++t)
                v[t] = spec.base_rate +
                       spec.amplitude * std::sin(2.0 * M_PI * static_cast<double>(t) / spec.period_minutes) +
                       spec.noise_std * rng.normal();
            break;
        case Archetype::Ramp:
            for (std::int64_t t = 0; t < n; ++t)
                v[t] = spec.base_rate + spec.slope * static_cast<double>(t) + spec.noise_std * rng.normal();
            break;
        case Archetype::Spike: {
            for (std::int64_t t = 0; t < n; ++t) v[t] = spec.base_rate + spec.noise_std * rng.normal();
            double burst = spec.amplitude * spec.base_rate;
            double t = rng.exponential(kSpikeBurstsPerMinute);
            while (t < static_cast<double>(n)) {
                v[static_cast<std::int64_t>(t)] += burst;
                t += rng.exponential(kSpikeBurstsPerMinute);
            }
            break;
        }
    }

    WorkloadTrace out;
    out.function_id = spec.name.empty() ? std::string(to_string(spec.archetype)) : spec.name;
    out.counts = v.max(0.0).round();
    return out;
}

}  // namespace arc
