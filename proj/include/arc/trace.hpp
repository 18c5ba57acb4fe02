#pragma once

#include "arc/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace arc {

/// One CSV record: invocation count of one function during one minute.
struct TraceRecord {
    std::string function_id;
    std::int64_t minute_index = 0;
    std::int64_t invocations = 0;
};

/// Dense per-minute invocation counts for one function, minute 0 onward.
/// Gaps in the source data are zero-filled.
struct WorkloadTrace {
    std::string function_id;
    ArrayXd counts;

    std::int64_t minutes() const { return counts.size(); }
    double total() const { return counts.sum(); }
};

/// A fixed-length slice of a trace, the unit of feature extraction.
struct Window {
    std::string function_id;
    std::int64_t start_minute = 0;
    ArrayXd values;
};

enum class Archetype { Spike = 0, Periodic = 1, Ramp = 2, Stationary = 3 };
inline constexpr int kNumArchetypes = 4;

const char* to_string(Archetype a);
Archetype archetype_from_string(const std::string& s);

/// Parameters of a synthetic workload generator. One spec yields one
/// deterministic trace per rng_seed.
struct SyntheticSpec {
    std::string name;
    Archetype archetype = Archetype::Stationary;
    std::int64_t duration_minutes = 1440;
    double base_rate = 10.0;        // requests per minute
    double amplitude = 0.0;         // sinusoid amplitude, or burst height factor for spikes
    double period_minutes = 60.0;   // PERIODIC only
    double slope = 0.0;             // RAMP only, requests/min per minute
    double noise_std = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Burst arrivals in SPIKE traces follow a Poisson process with this
/// per-minute rate (about three bursts per hour). Each burst lands on one
/// minute and adds amplitude*base_rate invocations.
inline constexpr double kSpikeBurstsPerMinute = 0.05;

struct TraceCsvSchema {
    std::string id_column = "function_id";
    std::string minute_column = "minute_index";
    std::string count_column = "invocations";
    char delimiter = ',';
};

/// Loads a trace CSV, densifies each function's series (zero-filling
/// missing minutes) and drops functions whose total invocation count is
/// below `retention_floor`.
std::vector<WorkloadTrace> load_trace_csv(const std::string& path,
                                          const TraceCsvSchema& schema = {},
                                          std::int64_t retention_floor = 1000);

/// Writes a trace in the CSV interchange format. Zero-count minutes are
/// omitted; loading zero-fills them back.
void write_trace_csv(const std::string& path, const WorkloadTrace& trace,
                     const TraceCsvSchema& schema = {});

/// Overlapping windows at offsets 0, stride, 2*stride, ...
/// Yields floor((len - window_len)/stride) + 1 windows when the trace is
/// long enough, none otherwise.
std::vector<Window> slide_windows(const WorkloadTrace& trace, std::int64_t window_len = 60,
                                  std::int64_t stride = 10);

void validate_spec(const SyntheticSpec& spec);

/// Deterministic synthetic trace for the spec's archetype. Values are
/// clamped at zero and rounded to integer counts.
WorkloadTrace generate_synthetic(const SyntheticSpec& spec);

}  // namespace arc
