#pragma once

// Brute-force search used to calibrate acceptance thresholds. It reads only
// the raw link and category lists and shares no algorithm code with the
// library.

#include "synarch/corpus.hpp"

#include "support/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace synarch::oracle {

struct ReferenceResult {
    std::vector<std::uint64_t> authorities;
    std::vector<std::uint64_t> hubs;
    /// Candidate page → id of the cluster holding its first category.
    std::map<std::uint64_t, std::uint64_t> cluster_of;
};

class ReferencePipeline {
public:
    explicit ReferencePipeline(const RawCorpus& raw) {
        for (const auto& p : raw.pages) {
            auto& outs = out_[p.id.value];
            for (auto l : p.links) {
                if (l != p.id) outs.insert(l.value);
            }
            for (auto c : p.categories) categories_[p.id.value].insert(c.value);
            titles_[p.title] = p.id.value;
        }
        for (const auto& [from, outs] : out_) {
            for (auto to : outs) in_[to].insert(from);
        }
        for (const auto& c : raw.categories) {
            if (c.parent) parent_[c.id.value] = c.parent->value;
        }
    }

    ReferenceResult run(const std::string& title, std::size_t top_n = 20, std::size_t top_m = 20, double eps = 1e-8,
                        std::size_t max_iter = 100, std::size_t in_cap = 50, double max_weight = 20.0) const {
        const auto source = titles_.at(title);
        std::set<std::uint64_t> members{source};
        for (auto r : out_.at(source)) {
            members.insert(r);
            for (auto o : out_.at(r)) members.insert(o);
            auto in = in_.find(r);
            if (in == in_.end()) continue;
            std::size_t kept = 0;
            for (auto i : in->second) {
                if (kept++ == in_cap) break;
                members.insert(i);
            }
        }
        const std::vector<std::uint64_t> nodes(members.begin(), members.end());
        const auto n = static_cast<int>(nodes.size());
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (out_.at(nodes[i]).count(nodes[j])) a(i, j) = 1.0;
            }
        }

        Eigen::VectorXd auth = Eigen::VectorXd::Ones(n);
        Eigen::VectorXd hub = Eigen::VectorXd::Ones(n);
        if (a.sum() == 0) {
            auth.setZero();
            hub.setZero();
        } else {
            for (std::size_t it = 0; it < max_iter; ++it) {
                Eigen::VectorXd next_auth = a.transpose() * hub;
                if (next_auth.norm() > 0) next_auth /= next_auth.norm();
                Eigen::VectorXd next_hub = a * next_auth;
                if (next_hub.norm() > 0) next_hub /= next_hub.norm();
                const double change = std::max((next_auth - auth).cwiseAbs().maxCoeff(),
                                               (next_hub - hub).cwiseAbs().maxCoeff());
                auth = next_auth;
                hub = next_hub;
                if (change < eps) break;
            }
        }

        auto ranked = [&](const Eigen::VectorXd& score, bool skip_source, std::size_t count) {
            std::vector<int> order;
            for (int i = 0; i < n; ++i) {
                if (!(skip_source && nodes[i] == source)) order.push_back(i);
            }
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return score(x) != score(y) ? score(x) > score(y) : nodes[x] < nodes[y];
            });
            if (order.size() > count) order.resize(count);
            std::vector<std::uint64_t> out;
            for (int i : order) out.push_back(nodes[i]);
            return out;
        };

        ReferenceResult result;
        result.hubs = ranked(hub, false, top_m);
        for (auto candidate : ranked(auth, true, top_n)) {
            for (auto h : result.hubs) {
                if (out_.at(h).count(source) && out_.at(h).count(candidate)) {
                    result.authorities.push_back(candidate);
                    break;
                }
            }
        }

        std::map<std::uint64_t, double> weights;
        for (auto p : result.authorities) {
            for (auto c : categories_.at(p)) weights[c] += 1.0;
        }
        for (auto& [c, w] : weights) w += 1.0;
        std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
        for (const auto& [c, w] : weights) {
            auto parent = parent_.find(c);
            if (parent != parent_.end() && weights.count(parent->second)) {
                edges.emplace(std::min(c, parent->second), std::max(c, parent->second));
            }
        }
        const auto clusters = naive_clustering(weights, edges, max_weight);
        for (auto p : result.authorities) {
            const auto first = *categories_.at(p).begin();
            for (const auto& [id, cluster] : clusters) {
                if (cluster.members.count(first)) result.cluster_of[p] = id;
            }
        }
        return result;
    }

private:
    std::map<std::uint64_t, std::set<std::uint64_t>> out_;
    std::map<std::uint64_t, std::set<std::uint64_t>> in_;
    std::map<std::uint64_t, std::set<std::uint64_t>> categories_;
    std::map<std::uint64_t, std::uint64_t> parent_;
    std::map<std::string, std::uint64_t> titles_;
};

} // namespace synarch::oracle
