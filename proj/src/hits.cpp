#include "synarch/hits.hpp"

#include "synarch/errors.hpp"

#include <algorithm>
#include <cmath>

namespace synarch {

std::vector<FieldError> check(const HitsParams& params) {
    std::vector<FieldError> errors;
    if (!(params.k >= 0.0 && params.k <= 1.0)) errors.push_back({"k", "must lie in [0, 1]"});
    if (!(params.eps > 0.0)) errors.push_back({"eps", "must be positive"});
    if (params.max_iter < 1) errors.push_back({"max_iter", "must be at least 1"});
    return errors;
}

std::optional<std::size_t> BaseSubgraph::position(PageId page) const {
    auto it = std::lower_bound(members.begin(), members.end(), page);
    if (it == members.end() || *it != page) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
}

bool BaseSubgraph::has_edge(PageId from, PageId to) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(from, to));
}

namespace {

double score_of(const std::vector<PageId>& pages, const std::vector<double>& scores, PageId page) {
    auto it = std::lower_bound(pages.begin(), pages.end(), page);
    if (it == pages.end() || *it != page) throw NotFoundError("page " + std::to_string(page.value) + " is not scored");
    return scores[static_cast<std::size_t>(it - pages.begin())];
}

void normalize(std::vector<double>& v) {
    double sq = 0.0;
    for (double x : v) sq += x * x;
    if (sq == 0.0) return;
    const double norm = std::sqrt(sq);
    for (double& x : v) x /= norm;
}

std::vector<ScoredPage> top_by(const std::vector<PageId>& pages, const std::vector<double>& scores,
                               std::size_t count, std::optional<PageId> exclude) {
    std::vector<ScoredPage> ranked;
    ranked.reserve(pages.size());
    for (std::size_t i = 0; i < pages.size(); ++i) {
        if (exclude && pages[i] == *exclude) continue;
        ranked.push_back({pages[i], scores[i]});
    }
    auto order = [](const ScoredPage& a, const ScoredPage& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.page < b.page;
    };
    const auto keep = std::min(count, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(), order);
    ranked.resize(keep);
    return ranked;
}

double descending_sum(const std::vector<ScoredPage>& pages) {
    std::vector<double> values;
    values.reserve(pages.size());
    for (const auto& p : pages) values.push_back(p.score);
    std::sort(values.begin(), values.end(), std::greater<>());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
}

} // namespace

double HitsScores::authority_of(PageId page) const { return score_of(pages, authority, page); }

double HitsScores::hub_of(PageId page) const { return score_of(pages, hub, page); }

std::vector<PageId> build_root_set(const Corpus& corpus, PageId source) {
    return neighbors(corpus, source, Direction::out);
}

BaseSubgraph build_base_set(const Corpus& corpus, PageId source, const std::vector<PageId>& root,
                            std::size_t in_cap) {
    BaseSubgraph sub;
    sub.source = source;
    sub.root = root;
    std::sort(sub.root.begin(), sub.root.end());
    sub.root.erase(std::unique(sub.root.begin(), sub.root.end()), sub.root.end());

    std::vector<PageIndex> members{corpus.index_of(source)};
    for (auto r : sub.root) {
        const auto ri = corpus.index_of(r);
        members.push_back(ri);
        auto out = corpus.out_links(ri);
        members.insert(members.end(), out.begin(), out.end());
        auto in = corpus.in_links(ri);
        const auto take = std::min(in_cap, in.size());
        members.insert(members.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    sub.members.reserve(members.size());
    for (auto m : members) sub.members.push_back(corpus.id(m));
    for (auto m : members) {
        for (auto t : corpus.out_links(m)) {
            if (std::binary_search(members.begin(), members.end(), t)) {
                sub.edges.emplace_back(corpus.id(m), corpus.id(t));
            }
        }
    }
    return sub;
}

HitsScores iterate_hits(const BaseSubgraph& sub, double eps, std::size_t max_iter) {
    const std::size_t n = sub.members.size();
    HitsScores scores;
    scores.pages = sub.members;

    if (sub.edges.empty()) {
        scores.authority.assign(n, 0.0);
        scores.hub.assign(n, 0.0);
        scores.iterations_run = 1;
        scores.converged = true;
        return scores;
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(sub.edges.size());
    for (const auto& [from, to] : sub.edges) {
        auto f = sub.position(from);
        auto t = sub.position(to);
        if (!f || !t) throw ArgumentError("subgraph edge endpoint is not a member");
        edges.emplace_back(*f, *t);
    }

    std::vector<double> authority(n, 1.0);
    std::vector<double> hub(n, 1.0);
    std::vector<double> next_authority(n);
    std::vector<double> next_hub(n);

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        std::fill(next_authority.begin(), next_authority.end(), 0.0);
        for (const auto& [from, to] : edges) next_authority[to] += hub[from];
        normalize(next_authority);

        std::fill(next_hub.begin(), next_hub.end(), 0.0);
        for (const auto& [from, to] : edges) next_hub[from] += next_authority[to];
        normalize(next_hub);

        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            change = std::max(change, std::abs(next_authority[i] - authority[i]));
            change = std::max(change, std::abs(next_hub[i] - hub[i]));
        }
        authority.swap(next_authority);
        hub.swap(next_hub);
        scores.iterations_run = iter;
        if (change < eps) {
            scores.converged = true;
            break;
        }
    }
    scores.authority = std::move(authority);
    scores.hub = std::move(hub);
    return scores;
}

double selection_objective(const std::vector<ScoredPage>& authorities, const std::vector<ScoredPage>& hubs,
                           double k) {
    return k * descending_sum(authorities) + (1.0 - k) * descending_sum(hubs);
}

CandidateSelection select_top(const HitsScores& scores, const BaseSubgraph& sub, const HitsParams& params) {
    CandidateSelection selection;
    selection.authorities = top_by(scores.pages, scores.authority, params.top_n, sub.source);
    selection.hubs = top_by(scores.pages, scores.hub, params.top_m, std::nullopt);
    selection.objective = selection_objective(selection.authorities, selection.hubs, params.k);
    return selection;
}

CandidateSelection select_candidates(const HitsScores& scores, const BaseSubgraph& sub,
                                     const HitsParams& params) {
    auto selection = select_top(scores, sub, params);

    std::vector<PageId> source_hubs;
    for (const auto& h : selection.hubs) {
        if (sub.has_edge(h.page, sub.source)) source_hubs.push_back(h.page);
    }
    const auto before = selection.authorities.size();
    std::erase_if(selection.authorities, [&](const ScoredPage& a) {
        return std::none_of(source_hubs.begin(), source_hubs.end(),
                            [&](PageId h) { return sub.has_edge(h, a.page); });
    });
    selection.dropped_without_common_hub = before - selection.authorities.size();
    selection.objective = selection_objective(selection.authorities, selection.hubs, params.k);
    return selection;
}

SimilarPages search_similar(const Corpus& corpus, const std::string& word, const HitsParams& params) {
    if (auto errors = check(params); !errors.empty()) {
        throw ArgumentError("invalid parameter " + errors.front().field + ": " + errors.front().message);
    }
    const auto source = corpus.id(corpus.index_of_title(word));

    SimilarPages result;
    auto root = build_root_set(corpus, source);
    if (root.empty()) result.diagnostics.push_back("empty root set: \"" + word + "\" has no out-links");
    result.subgraph = build_base_set(corpus, source, root, params.in_cap);
    result.scores = iterate_hits(result.subgraph, params.eps, params.max_iter);
    if (!result.scores.converged) {
        result.diagnostics.push_back("hits did not converge within " + std::to_string(params.max_iter) +
                                     " iterations");
    }
    result.selection = select_candidates(result.scores, result.subgraph, params);
    if (result.selection.dropped_without_common_hub > 0) {
        result.diagnostics.push_back(std::to_string(result.selection.dropped_without_common_hub) +
                                     " authorities dropped for lacking a hub shared with the source");
    }
    return result;
}

} // namespace synarch
