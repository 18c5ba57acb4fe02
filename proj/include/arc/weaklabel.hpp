#pragma once

#include "arc/features.hpp"
#include "arc/trace.hpp"

#include <array>
#include <optional>
#include <vector>

namespace arc {

/// One labeling function's verdict: an archetype vote or an abstention.
struct LfVote {
    int lf_id = 0;  // 1..10
    std::optional<Archetype> vote;
};

/// Aggregated weak label. Confidence is the winner's share of non-abstain
/// votes; 0.25 (uniform over four classes) when every rule abstained.
struct WeakLabel {
    Archetype archetype = Archetype::Stationary;
    double confidence = 0.0;
    std::vector<LfVote> votes;
};

/// Rule thresholds, overridable from the experiment config.
struct LfThresholds {
    double spike_kurtosis = 10.0;
    double spike_max_to_median = 20.0;
    double spike_burstiness = 0.7;
    double spike_p99_over_median = 15.0;
    double periodic_entropy = 0.5;
    double periodic_autocorr = 0.6;
    double periodic_dominant_fraction = 0.4;
    double ramp_r_squared = 0.8;
    double ramp_diff_agreement = 0.8;
    double stationary_cv = 0.3;
    double stationary_entropy = 0.8;
    double stationary_r_squared = 0.2;
    double stationary_std_over_mean = 0.3;
    double idle_mean = 0.1;
};

/// Runs the ten labeling rules over a feature vector. The monotone-trend
/// rule (LF6) reads the window's first-difference sign agreement, which is
/// not one of the 37 features; callers without the raw window get the
/// neutral default and LF6 abstains.
std::vector<LfVote> apply_labeling_functions(const FeatureVector& fv,
                                             double diff_agreement = 0.5,
                                             const LfThresholds& th = {});

/// Plurality over non-abstain votes; ties break by the fixed risk order
/// SPIKE > PERIODIC > RAMP > STATIONARY. All-abstain falls back to
/// STATIONARY at confidence 0.25.
WeakLabel majority_vote(const std::vector<LfVote>& votes);

struct LabeledWindow {
    std::string function_id;
    std::int64_t start_minute = 0;
    FeatureVector features;
    WeakLabel label;
};

struct LabelingReport {
    std::size_t windows_in = 0;
    std::size_t windows_skipped = 0;
    std::array<std::size_t, kNumArchetypes> class_counts = {0, 0, 0, 0};
};

/// Features + weak label for every window. Windows whose feature
/// extraction fails are skipped and counted in the report.
std::vector<LabeledWindow> label_dataset(const std::vector<Window>& windows,
                                         LabelingReport* report = nullptr,
                                         const LfThresholds& th = {});

}  // namespace arc
