#include "arc/booster.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace arc {

VectorXd softmax(const VectorXd& scores) {
    VectorXd z = scores.array() - scores.maxCoeff();
    VectorXd e = z.array().exp();
    return e / e.sum();
}

double RegressionTree::predict(const double* x) const {
    int idx = 0;
    while (nodes[idx].feature >= 0) {
        const TreeNode& nd = nodes[idx];
        idx = (x[nd.feature] <= nd.threshold) ? nd.left : nd.right;
    }
    return nodes[idx].value;
}

namespace {

// Quantile-based candidate thresholds for one feature column.
std::vector<double> bin_edges(const MatrixXd& X, int col, int n_bins) {
    std::vector<double> v(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) v[i] = X(i, col);
    std::sort(v.begin(), v.end());
    std::vector<double> edges;
    for (int b = 1; b < n_bins; ++b) {
        std::size_t idx = static_cast<std::size_t>(v.size()) * b / n_bins;
        if (idx >= v.size()) idx = v.size() - 1;
        double e = v[idx];
        if (edges.empty() || e > edges.back()) edges.push_back(e);
    }
    // A constant column yields no usable edge and is never split on.
    if (!edges.empty() && edges.back() >= v.back()) edges.pop_back();
    return edges;
}

struct SplitResult {
    double gain = 0.0;
    int feature = -1;
    int bin = -1;  // last bin routed left
};

struct NodeBuild {
    int node_index;
    int depth;
    std::vector<int> rows;
};

}  // namespace

void Booster::train(const MatrixXd& X, const std::vector<int>& y, const BoosterParams& params) {
    const Eigen::Index n = X.rows();
    if (n == 0) throw ValidationError("empty training set");
    if (static_cast<Eigen::Index>(y.size()) != n)
        throw ValidationError("label count does not match row count");
    if (params.n_classes < 2) throw ValidationError("need at least 2 classes");
    for (int label : y)
        if (label < 0 || label >= params.n_classes)
            throw ValidationError("label out of range [0, n_classes)");

    params_ = params;
    n_features_ = static_cast<int>(X.cols());
    rounds_.clear();

    // Per-feature quantile edges and per-sample bin ids, shared by all rounds.
    std::vector<std::vector<double>> edges(n_features_);
    std::vector<std::vector<std::uint16_t>> bins(n_features_);
    for (int j = 0; j < n_features_; ++j) {
        edges[j] = bin_edges(X, j, params.n_bins);
        bins[j].resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& e = edges[j];
            bins[j][i] = static_cast<std::uint16_t>(
                std::upper_bound(e.begin(), e.end(), X(i, j)) - e.begin());
        }
    }

    const int K = params.n_classes;
    MatrixXd scores = MatrixXd::Zero(n, K);
    std::mt19937_64 rng(params.seed);

    for (int round = 0; round < params.n_rounds; ++round) {
        // Softmax gradients for the current scores.
        MatrixXd grad(n, K), hess(n, K);
        for (Eigen::Index i = 0; i < n; ++i) {
            VectorXd p = softmax(scores.row(i).transpose());
            for (int k = 0; k < K; ++k) {
                double pk = p[k];
                grad(i, k) = pk - (y[i] == k ? 1.0 : 0.0);
                hess(i, k) = std::max(pk * (1.0 - pk), 1e-12);
            }
        }

        std::vector<int> sample_rows(n);
        for (Eigen::Index i = 0; i < n; ++i) sample_rows[i] = static_cast<int>(i);
        if (params.subsample < 1.0) {
            std::shuffle(sample_rows.begin(), sample_rows.end(), rng);
            sample_rows.resize(std::max<std::size_t>(
                1, static_cast<std::size_t>(params.subsample * static_cast<double>(n))));
            std::sort(sample_rows.begin(), sample_rows.end());
        }

        std::vector<RegressionTree> trees(K);
        for (int k = 0; k < K; ++k) {
            RegressionTree& tree = trees[k];
            tree.nodes.push_back(TreeNode{});
            std::vector<NodeBuild> frontier;
            frontier.push_back({0, 0, sample_rows});

            while (!frontier.empty()) {
                NodeBuild nb = std::move(frontier.back());
                frontier.pop_back();
                const auto& rows = nb.rows;

                double G = 0.0, H = 0.0;
                for (int r : rows) {
                    G += grad(r, k);
                    H += hess(r, k);
                }
                auto leaf_value = [&](double g, double h) { return -g / (h + params.l2_reg); };

                SplitResult best;
                if (nb.depth < params.max_depth &&
                    rows.size() >= static_cast<std::size_t>(2 * params.min_samples_leaf)) {
                    double parent_obj = G * G / (H + params.l2_reg);
                    for (int j = 0; j < n_features_; ++j) {
                        const int nb_bins = static_cast<int>(edges[j].size()) + 1;
                        if (nb_bins < 2) continue;
                        std::vector<double> hg(nb_bins, 0.0), hh(nb_bins, 0.0);
                        std::vector<int> hc(nb_bins, 0);
                        for (int r : rows) {
                            int b = bins[j][r];
                            hg[b] += grad(r, k);
                            hh[b] += hess(r, k);
                            ++hc[b];
                        }
                        double gl = 0.0, hl = 0.0;
                        int cl = 0;
                        for (int b = 0; b + 1 < nb_bins; ++b) {
                            gl += hg[b];
                            hl += hh[b];
                            cl += hc[b];
                            int cr = static_cast<int>(rows.size()) - cl;
                            if (cl < params.min_samples_leaf || cr < params.min_samples_leaf)
                                continue;
                            double gr = G - gl, hr = H - hl;
                            double gain = gl * gl / (hl + params.l2_reg) +
                                          gr * gr / (hr + params.l2_reg) - parent_obj;
                            if (gain > best.gain + 1e-12) {
                                best.gain = gain;
                                best.feature = j;
                                best.bin = b;
                            }
                        }
                    }
                }

                if (best.feature < 0) {
                    tree.nodes[nb.node_index].feature = -1;
                    tree.nodes[nb.node_index].value = leaf_value(G, H);
                    continue;
                }

                std::vector<int> left_rows, right_rows;
                left_rows.reserve(rows.size());
                right_rows.reserve(rows.size());
                for (int r : rows) {
                    if (bins[best.feature][r] <= static_cast<std::uint16_t>(best.bin))
                        left_rows.push_back(r);
                    else
                        right_rows.push_back(r);
                }

                int li = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(TreeNode{});
                int ri = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(TreeNode{});
                TreeNode& nd = tree.nodes[nb.node_index];
                nd.feature = best.feature;
                nd.threshold = edges[best.feature][best.bin];
                nd.left = li;
                nd.right = ri;
                frontier.push_back({ri, nb.depth + 1, std::move(right_rows)});
                frontier.push_back({li, nb.depth + 1, std::move(left_rows)});
            }
        }

        for (Eigen::Index i = 0; i < n; ++i) {
            const double* xi = X.row(i).data();
            // MatrixXd is column-major; gather the row explicitly.
            (void)xi;
            VectorXd row = X.row(i).transpose();
            for (int k = 0; k < K; ++k)
                scores(i, k) += params.learning_rate * trees[k].predict(row.data());
        }
        rounds_.push_back(std::move(trees));
    }
}

VectorXd Booster::predict_scores(const VectorXd& x) const {
    if (!trained() && rounds_.empty() && n_features_ == 0)
        throw ValidationError("booster is not trained");
    if (x.size() != n_features_)
        throw ValidationError("feature vector has " + std::to_string(x.size()) +
                              " values, model expects " + std::to_string(n_features_));
    VectorXd s = VectorXd::Zero(params_.n_classes);
    for (const auto& trees : rounds_)
        for (int k = 0; k < params_.n_classes; ++k)
            s[k] += params_.learning_rate * trees[k].predict(x.data());
    return s;
}

VectorXd Booster::predict_proba(const VectorXd& x) const { return softmax(predict_scores(x)); }

void Booster::save(std::ostream& out) const {
    out << "booster v1\n";
    out << "n_classes " << params_.n_classes << " n_rounds " << params_.n_rounds << " max_depth "
        << params_.max_depth << " n_bins " << params_.n_bins << " min_samples_leaf "
        << params_.min_samples_leaf << "\n";
    out << "learning_rate " << fmt_exact(params_.learning_rate) << " l2_reg "
        << fmt_exact(params_.l2_reg) << " subsample " << fmt_exact(params_.subsample) << " seed "
        << params_.seed << "\n";
    out << "n_features " << n_features_ << " rounds_stored " << rounds_.size() << "\n";
    for (const auto& trees : rounds_) {
        for (const auto& tree : trees) {
            out << "tree " << tree.nodes.size() << "\n";
            for (const auto& nd : tree.nodes) {
                if (nd.feature < 0)
                    out << "leaf " << fmt_exact(nd.value) << "\n";
                else
                    out << "split " << nd.feature << " " << fmt_exact(nd.threshold) << " "
                        << nd.left << " " << nd.right << "\n";
            }
        }
    }
}

namespace {
std::string expect_token(std::istream& in, const char* what) {
    std::string tok;
    if (!(in >> tok)) throw ValidationError(std::string("model file truncated, expected ") + what);
    return tok;
}

void expect_literal(std::istream& in, const std::string& lit) {
    std::string tok = expect_token(in, lit.c_str());
    if (tok != lit)
        throw ValidationError("model file: expected '" + lit + "', got '" + tok + "'");
}

double read_exact(std::istream& in) {
    std::string tok = expect_token(in, "number");
    return std::strtod(tok.c_str(), nullptr);
}
}  // namespace

Booster Booster::load(std::istream& in) {
    expect_literal(in, "booster");
    expect_literal(in, "v1");
    Booster b;
    expect_literal(in, "n_classes");
    in >> b.params_.n_classes;
    expect_literal(in, "n_rounds");
    in >> b.params_.n_rounds;
    expect_literal(in, "max_depth");
    in >> b.params_.max_depth;
    expect_literal(in, "n_bins");
    in >> b.params_.n_bins;
    expect_literal(in, "min_samples_leaf");
    in >> b.params_.min_samples_leaf;
    expect_literal(in, "learning_rate");
    b.params_.learning_rate = read_exact(in);
    expect_literal(in, "l2_reg");
    b.params_.l2_reg = read_exact(in);
    expect_literal(in, "subsample");
    b.params_.subsample = read_exact(in);
    expect_literal(in, "seed");
    in >> b.params_.seed;
    expect_literal(in, "n_features");
    in >> b.n_features_;
    expect_literal(in, "rounds_stored");
    std::size_t stored = 0;
    in >> stored;
    if (!in) throw ValidationError("model file: bad header");

    for (std::size_t r = 0; r < stored; ++r) {
        std::vector<RegressionTree> trees(b.params_.n_classes);
        for (int k = 0; k < b.params_.n_classes; ++k) {
            expect_literal(in, "tree");
            std::size_t n_nodes = 0;
            in >> n_nodes;
            trees[k].nodes.resize(n_nodes);
            for (std::size_t i = 0; i < n_nodes; ++i) {
                std::string kind = expect_token(in, "node kind");
                TreeNode& nd = trees[k].nodes[i];
                if (kind == "leaf") {
                    nd.feature = -1;
                    nd.value = read_exact(in);
                } else if (kind == "split") {
                    in >> nd.feature;
                    nd.threshold = read_exact(in);
                    in >> nd.left >> nd.right;
                } else {
                    throw ValidationError("model file: unknown node kind '" + kind + "'");
                }
            }
        }
        b.rounds_.push_back(std::move(trees));
    }
    if (!in) throw ValidationError("model file: truncated tree section");
    return b;
}

bool Booster::operator==(const Booster& other) const {
    if (n_features_ != other.n_features_ || rounds_.size() != other.rounds_.size()) return false;
    for (std::size_t r = 0; r < rounds_.size(); ++r) {
        if (rounds_[r].size() != other.rounds_[r].size()) return false;
        for (std::size_t k = 0; k < rounds_[r].size(); ++k) {
            const auto& a = rounds_[r][k].nodes;
            const auto& c = other.rounds_[r][k].nodes;
            if (a.size() != c.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].feature != c[i].feature || a[i].left != c[i].left ||
                    a[i].right != c[i].right)
                    return false;
                // Bit-exact doubles: the file format stores hex floats.
                if (a[i].threshold != c[i].threshold || a[i].value != c[i].value) return false;
            }
        }
    }
    return true;
}

}  // namespace arc
