#pragma once

#include "arc/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace arc {

struct BoosterParams {
    int n_classes = 4;
    int n_rounds = 100;
    int max_depth = 4;
    double learning_rate = 0.1;
    int n_bins = 32;            // histogram bins per feature
    int min_samples_leaf = 5;
    double l2_reg = 1.0;
    double subsample = 1.0;     // row fraction per round; 1.0 = deterministic full pass
    std::uint64_t seed = 0;     // only consumed when subsample < 1
};

/// One node of a binary regression tree. Interior nodes route
/// x[feature] <= threshold to `left`; leaves carry an additive score.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;
    double predict(const double* x) const;
};

/// Multiclass gradient-boosted trees with softmax cross-entropy loss:
/// per round, one depth-limited regression tree per class is fitted to the
/// gradient/hessian statistics on quantile-binned feature histograms.
/// Training is deterministic for a fixed (data, params, seed).
class Booster {
public:
    /// X is row-major samples x features; y holds class ids in [0, n_classes).
    void train(const MatrixXd& X, const std::vector<int>& y, const BoosterParams& params);

    /// Class-score vector (pre-softmax) for one sample.
    VectorXd predict_scores(const VectorXd& x) const;
    /// Softmax probabilities; non-negative, summing to 1.
    VectorXd predict_proba(const VectorXd& x) const;

    bool trained() const { return !rounds_.empty(); }
    int n_classes() const { return params_.n_classes; }
    int n_features() const { return n_features_; }
    const BoosterParams& params() const { return params_; }

    void save(std::ostream& out) const;
    static Booster load(std::istream& in);

    /// Exact structural equality, used by serialization round-trip checks.
    bool operator==(const Booster& other) const;

private:
    BoosterParams params_;
    int n_features_ = 0;
    std::vector<std::vector<RegressionTree>> rounds_;  // [round][class]
};

VectorXd softmax(const VectorXd& scores);

}  // namespace arc
