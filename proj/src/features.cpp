#include "arc/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace arc {

namespace {

// Quantile with linear interpolation between closest ranks, on a sorted copy.
double quantile(const std::vector<double>& sorted, double p) {
    const auto n = sorted.size();
    if (n == 1) return sorted[0];
    double pos = p * static_cast<double>(n - 1);
    auto lo = static_cast<std::size_t>(pos);
    if (lo >= n - 1) return sorted[n - 1];
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

// Pearson correlation of (x_t, x_{t+k}); 0 when either slice is constant
// or fewer than two pairs exist.
double autocorr(const ArrayXd& x, Eigen::Index k) {
    const Eigen::Index m = x.size() - k;
    if (m < 2) return 0.0;
    ArrayXd a = x.head(m);
    ArrayXd b = x.tail(m);
    double ma = a.mean(), mb = b.mean();
    double va = (a - ma).square().sum();
    double vb = (b - mb).square().sum();
    if (va <= 0.0 || vb <= 0.0) return 0.0;
    double cov = ((a - ma) * (b - mb)).sum();
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

}  // namespace

std::array<double, kNumFeatures> FeatureVector::as_array() const {
    return {mean, std, min, max, median, skewness, excess_kurtosis,
            p10, p25, p75, p90, p95, p99, iqr,
            peak_to_mean, max_to_median, ols_slope, r_squared, trend_direction,
            autocorr_lag1, autocorr_lag5, autocorr_lag10, autocorr_lag30,
            mean_crossings, coeff_variation, burstiness, longest_zero_run,
            spectral_entropy, dominant_freq_index, dominant_power_fraction,
            band_energy_1, band_energy_2, band_energy_3, band_energy_4,
            spectral_centroid, spectral_flatness, total_spectral_energy};
}

FeatureVector FeatureVector::from_array(const std::array<double, kNumFeatures>& a) {
    FeatureVector f;
    int i = 0;
    f.mean = a[i++]; f.std = a[i++]; f.min = a[i++]; f.max = a[i++]; f.median = a[i++];
    f.skewness = a[i++]; f.excess_kurtosis = a[i++];
    f.p10 = a[i++]; f.p25 = a[i++]; f.p75 = a[i++]; f.p90 = a[i++]; f.p95 = a[i++];
    f.p99 = a[i++]; f.iqr = a[i++];
    f.peak_to_mean = a[i++]; f.max_to_median = a[i++];
    f.ols_slope = a[i++]; f.r_squared = a[i++]; f.trend_direction = a[i++];
    f.autocorr_lag1 = a[i++]; f.autocorr_lag5 = a[i++]; f.autocorr_lag10 = a[i++];
    f.autocorr_lag30 = a[i++];
    f.mean_crossings = a[i++]; f.coeff_variation = a[i++]; f.burstiness = a[i++];
    f.longest_zero_run = a[i++];
    f.spectral_entropy = a[i++]; f.dominant_freq_index = a[i++]; f.dominant_power_fraction = a[i++];
    f.band_energy_1 = a[i++]; f.band_energy_2 = a[i++]; f.band_energy_3 = a[i++];
    f.band_energy_4 = a[i++];
    f.spectral_centroid = a[i++]; f.spectral_flatness = a[i++]; f.total_spectral_energy = a[i++];
    return f;
}

const std::array<std::string, kNumFeatures>& feature_names() {
    static const std::array<std::string, kNumFeatures> names = {
        "mean", "std", "min", "max", "median", "skewness", "excess_kurtosis",
        "p10", "p25", "p75", "p90", "p95", "p99", "iqr",
        "peak_to_mean", "max_to_median", "ols_slope", "r_squared", "trend_direction",
        "autocorr_lag1", "autocorr_lag5", "autocorr_lag10", "autocorr_lag30",
        "mean_crossings", "coeff_variation", "burstiness", "longest_zero_run",
        "spectral_entropy", "dominant_freq_index", "dominant_power_fraction",
        "band_energy_1", "band_energy_2", "band_energy_3", "band_energy_4",
        "spectral_centroid", "spectral_flatness", "total_spectral_energy"};
    return names;
}

double diff_sign_agreement(const ArrayXd& window) {
    const Eigen::Index n = window.size();
    if (n < 2) return 0.0;
    Eigen::Index pos = 0, neg = 0;
    for (Eigen::Index t = 0; t + 1 < n; ++t) {
        double d = window[t + 1] - window[t];
        if (d > 0) ++pos;
        else if (d < 0) ++neg;
    }
    return static_cast<double>(std::max(pos, neg)) / static_cast<double>(n - 1);
}

FeatureVector compute_features(const ArrayXd& w) {
    const Eigen::Index n = w.size();
    if (n < 2) throw ValidationError("window too short for feature extraction (need >= 2 values)");
    if ((w < 0.0).any()) throw ValidationError("window contains negative counts");

    FeatureVector f;
    const double nd = static_cast<double>(n);

    // --- statistical ---
    f.mean = w.mean();
    ArrayXd dev = w - f.mean;
    double m2 = dev.square().mean();
    f.std = std::sqrt(m2);
    f.min = w.minCoeff();
    f.max = w.maxCoeff();

    std::vector<double> sorted(w.data(), w.data() + n);
    std::sort(sorted.begin(), sorted.end());
    f.median = quantile(sorted, 0.50);
    f.p10 = quantile(sorted, 0.10);
    f.p25 = quantile(sorted, 0.25);
    f.p75 = quantile(sorted, 0.75);
    f.p90 = quantile(sorted, 0.90);
    f.p95 = quantile(sorted, 0.95);
    f.p99 = quantile(sorted, 0.99);
    f.iqr = f.p75 - f.p25;

    const bool flat = (m2 <= 0.0);
    if (!flat) {
        double m3 = dev.cube().mean();
        double m4 = dev.square().square().mean();
        f.skewness = m3 / std::pow(m2, 1.5);
        f.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }

    // --- time-domain ---
    f.peak_to_mean = f.mean > 0.0 ? f.max / f.mean : 0.0;
    f.max_to_median = f.median > 0.0 ? f.max / f.median : f.max / (f.median + 1.0);

    ArrayXd t = ArrayXd::LinSpaced(n, 0.0, nd - 1.0);
    double tbar = t.mean();
    double stt = (t - tbar).square().sum();
    double sxy = ((t - tbar) * dev).sum();
    f.ols_slope = sxy / stt;
    if (!flat) {
        double sxx = dev.square().sum();
        f.r_squared = std::clamp((sxy * sxy) / (stt * sxx), 0.0, 1.0);
    }
    if (f.ols_slope > 1e-9) f.trend_direction = 1.0;
    else if (f.ols_slope < -1e-9) f.trend_direction = -1.0;

    if (!flat) {
        f.autocorr_lag1 = autocorr(w, 1);
        f.autocorr_lag5 = autocorr(w, 5);
        f.autocorr_lag10 = autocorr(w, 10);
        f.autocorr_lag30 = autocorr(w, 30);
    }

    Eigen::Index crossings = 0;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        if (dev[i] * dev[i + 1] < 0.0) ++crossings;
    f.mean_crossings = static_cast<double>(crossings);

    f.coeff_variation = flat ? 0.0 : f.std / f.mean;
    f.burstiness = (f.std + f.mean) > 0.0 ? (f.std - f.mean) / (f.std + f.mean) : 0.0;

    Eigen::Index run = 0, best = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        run = (w[i] == 0.0) ? run + 1 : 0;
        best = std::max(best, run);
    }
    f.longest_zero_run = static_cast<double>(best);

    // --- frequency-domain: |DFT|^2 of the mean-removed window, bins 1..n/2 ---
    const Eigen::Index bins = n / 2;
    if (!flat && bins >= 1) {
        ArrayXd power(bins);
        for (Eigen::Index k = 1; k <= bins; ++k) {
            std::complex<double> acc(0.0, 0.0);
            const double w0 = -2.0 * M_PI * static_cast<double>(k) / nd;
            for (Eigen::Index i = 0; i < n; ++i)
                acc += dev[i] * std::polar(1.0, w0 * static_cast<double>(i));
            power[k - 1] = std::norm(acc);
        }
        double total = power.sum();
        f.total_spectral_energy = total;
        if (total > 0.0) {
            ArrayXd q = power / total;

            if (bins > 1) {
                double h = 0.0;
                for (Eigen::Index k = 0; k < bins; ++k)
                    if (q[k] > 0.0) h -= q[k] * std::log(q[k]);
                f.spectral_entropy = std::clamp(h / std::log(static_cast<double>(bins)), 0.0, 1.0);
            }

            Eigen::Index kmax = 0;
            power.maxCoeff(&kmax);
            f.dominant_freq_index = static_cast<double>(kmax + 1);
            f.dominant_power_fraction = q[kmax];

            // Spectrum quartered by frequency; energies are fractions of total.
            double be[4] = {0, 0, 0, 0};
            for (int j = 0; j < 4; ++j) {
                Eigen::Index lo = j * bins / 4;        // exclusive of previous band
                Eigen::Index hi = (j + 1) * bins / 4;  // inclusive end, 0-based [lo, hi)
                for (Eigen::Index k = lo; k < hi; ++k) be[j] += q[k];
            }
            f.band_energy_1 = be[0];
            f.band_energy_2 = be[1];
            f.band_energy_3 = be[2];
            f.band_energy_4 = be[3];

            for (Eigen::Index k = 0; k < bins; ++k)
                f.spectral_centroid += static_cast<double>(k + 1) * q[k];

            if ((power > 0.0).all()) {
                double log_mean = power.log().mean();
                f.spectral_flatness = std::clamp(std::exp(log_mean) / power.mean(), 0.0, 1.0);
            }
        }
    }

    return f;
}

}  // namespace arc
