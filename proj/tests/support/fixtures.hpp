#pragma once

#include "synarch/corpus.hpp"
#include "synarch/hits.hpp"

#include <algorithm>
#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace synarch::testing {

/// Page ids 0..n-1, all members, edges as given.
inline BaseSubgraph subgraph_from(int n, const std::vector<std::pair<int, int>>& edges, int source = 0) {
    BaseSubgraph sub;
    sub.source = PageId{static_cast<std::uint64_t>(source)};
    for (int i = 0; i < n; ++i) sub.members.push_back(PageId{static_cast<std::uint64_t>(i)});
    for (auto [a, b] : edges) {
        sub.edges.emplace_back(PageId{static_cast<std::uint64_t>(a)}, PageId{static_cast<std::uint64_t>(b)});
    }
    std::sort(sub.edges.begin(), sub.edges.end());
    return sub;
}

struct PageSpec {
    std::uint64_t id;
    std::string title;
    std::vector<std::uint64_t> links;
    std::vector<std::uint64_t> categories = {1};
};

/// Single root category 1 plus any extra (id, parent) categories.
inline RawCorpus raw_corpus(std::initializer_list<PageSpec> pages,
                            std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> extra_categories = {}) {
    RawCorpus raw;
    raw.categories.push_back({CategoryId{1}, "root", std::nullopt});
    for (auto [id, parent] : extra_categories) {
        raw.categories.push_back({CategoryId{id}, "cat-" + std::to_string(id), CategoryId{parent}});
    }
    for (const auto& p : pages) {
        RawPage page{PageId{p.id}, p.title, {}, {}};
        for (auto l : p.links) page.links.push_back(PageId{l});
        for (auto c : p.categories) page.categories.push_back(CategoryId{c});
        raw.pages.push_back(std::move(page));
    }
    return raw;
}

inline Corpus corpus_of(std::initializer_list<PageSpec> pages,
                        std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> extra_categories = {}) {
    return Corpus::build(raw_corpus(pages, extra_categories));
}

inline std::vector<PageId> ids(std::initializer_list<std::uint64_t> values) {
    std::vector<PageId> out;
    for (auto v : values) out.push_back(PageId{v});
    return out;
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("synarch-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

} // namespace synarch::testing
