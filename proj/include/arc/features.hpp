#pragma once

#include "arc/common.hpp"

#include <array>
#include <string>

namespace arc {

inline constexpr int kNumFeatures = 37;

/// The 37 per-window features, in canonical column order: 14 statistical,
/// 13 time-domain, 10 frequency-domain. The spectrum is the magnitude-
/// squared DFT of the mean-removed window over bins 1..floor(n/2) (DC
/// excluded), rectangular window, no padding.
///
/// Degenerate windows resolve to finite conventions instead of NaN:
/// zero variance forces skewness, excess_kurtosis, the autocorrelations,
/// coeff_variation, spectral_entropy and r_squared to 0; a zero median
/// turns max_to_median into max/(median+1).
struct FeatureVector {
    // statistical
    double mean = 0, std = 0, min = 0, max = 0, median = 0;
    double skewness = 0, excess_kurtosis = 0;
    double p10 = 0, p25 = 0, p75 = 0, p90 = 0, p95 = 0, p99 = 0, iqr = 0;
    // time-domain
    double peak_to_mean = 0, max_to_median = 0;
    double ols_slope = 0, r_squared = 0, trend_direction = 0;
    double autocorr_lag1 = 0, autocorr_lag5 = 0, autocorr_lag10 = 0, autocorr_lag30 = 0;
    double mean_crossings = 0, coeff_variation = 0, burstiness = 0, longest_zero_run = 0;
    // frequency-domain
    double spectral_entropy = 0, dominant_freq_index = 0, dominant_power_fraction = 0;
    double band_energy_1 = 0, band_energy_2 = 0, band_energy_3 = 0, band_energy_4 = 0;
    double spectral_centroid = 0, spectral_flatness = 0, total_spectral_energy = 0;

    std::array<double, kNumFeatures> as_array() const;
    static FeatureVector from_array(const std::array<double, kNumFeatures>& a);
};

/// Canonical column names, matching FeatureVector::as_array() order.
/// This order binds CSV headers and classifier columns.
const std::array<std::string, kNumFeatures>& feature_names();

/// Extracts all 37 features from a window of at least 2 non-negative values.
FeatureVector compute_features(const ArrayXd& window);

/// Fraction of first differences sharing the majority sign, in [0, 1].
/// Flat stretches count against agreement. Input to the monotone-trend
/// labeling rule, which needs the raw window rather than the 37 features.
double diff_sign_agreement(const ArrayXd& window);

}  // namespace arc
