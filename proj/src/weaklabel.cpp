#include "arc/weaklabel.hpp"

#include <algorithm>

namespace arc {

std::vector<LfVote> apply_labeling_functions(const FeatureVector& fv, double diff_agreement,
                                             const LfThresholds& th) {
    std::vector<LfVote> votes;
    votes.reserve(10);
    auto emit = [&](int id, std::optional<Archetype> v) { votes.push_back({id, v}); };
    auto vote_if = [&](int id, bool cond, Archetype a) {
        emit(id, cond ? std::optional<Archetype>(a) : std::nullopt);
    };

    double max_autocorr = std::max({fv.autocorr_lag5, fv.autocorr_lag10, fv.autocorr_lag30});

    // SPIKE: heavy-tailed bursts
    vote_if(1, fv.excess_kurtosis > th.spike_kurtosis && fv.max_to_median > th.spike_max_to_median,
            Archetype::Spike);
    vote_if(2, fv.burstiness > th.spike_burstiness && fv.p99 > th.spike_p99_over_median * fv.median,
            Archetype::Spike);
    // PERIODIC: concentrated spectrum / strong self-similarity
    vote_if(3, fv.spectral_entropy < th.periodic_entropy && max_autocorr > th.periodic_autocorr,
            Archetype::Periodic);
    vote_if(4, fv.dominant_power_fraction > th.periodic_dominant_fraction, Archetype::Periodic);
    // RAMP: sustained linear trend
    vote_if(5, fv.r_squared > th.ramp_r_squared && std::abs(fv.ols_slope) > 0.0, Archetype::Ramp);
    vote_if(6, diff_agreement >= th.ramp_diff_agreement, Archetype::Ramp);
    // STATIONARY: low relative variation, flat spectrum, no trend
    vote_if(7, fv.coeff_variation < th.stationary_cv && fv.spectral_entropy > th.stationary_entropy,
            Archetype::Stationary);
    vote_if(8, fv.r_squared < th.stationary_r_squared && fv.std < th.stationary_std_over_mean * fv.mean,
            Archetype::Stationary);
    // Idle traffic is stationary by definition.
    vote_if(9, fv.mean < th.idle_mean, Archetype::Stationary);
    // Disambiguator: tall peaks recurring at a fixed lag are periodic, not spiky.
    vote_if(10, fv.max_to_median > th.spike_max_to_median && max_autocorr > th.periodic_autocorr,
            Archetype::Periodic);

    return votes;
}

WeakLabel majority_vote(const std::vector<LfVote>& votes) {
    if (votes.size() != 10) throw ValidationError("majority_vote expects exactly 10 votes");

    WeakLabel out;
    out.votes = votes;

    int counts[kNumArchetypes] = {0, 0, 0, 0};
    int cast = 0;
    for (const auto& v : votes) {
        if (!v.vote) continue;
        ++counts[static_cast<int>(*v.vote)];
        ++cast;
    }
    if (cast == 0) {
        out.archetype = Archetype::Stationary;
        out.confidence = 0.25;
        return out;
    }
    // Enumeration order doubles as the tie-break precedence.
    int best = 0;
    for (int k = 1; k < kNumArchetypes; ++k)
        if (counts[k] > counts[best]) best = k;
    out.archetype = static_cast<Archetype>(best);
    out.confidence = static_cast<double>(counts[best]) / static_cast<double>(cast);
    return out;
}

std::vector<LabeledWindow> label_dataset(const std::vector<Window>& windows,
                                         LabelingReport* report, const LfThresholds& th) {
    std::vector<LabeledWindow> out;
    out.reserve(windows.size());
    LabelingReport rep;
    rep.windows_in = windows.size();
    for (const auto& w : windows) {
        LabeledWindow row;
        row.function_id = w.function_id;
        row.start_minute = w.start_minute;
        try {
            row.features = compute_features(w.values);
        } catch (const ValidationError&) {
            ++rep.windows_skipped;
            continue;
        }
        row.label = majority_vote(
            apply_labeling_functions(row.features, diff_sign_agreement(w.values), th));
        ++rep.class_counts[static_cast<int>(row.label.archetype)];
        out.push_back(std::move(row));
    }
    if (report) *report = rep;
    return out;
}

}  // namespace arc
