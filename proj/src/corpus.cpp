#include "synarch/corpus.hpp"

#include "synarch/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace synarch {

std::optional<Direction> parse_direction(std::string_view text) {
    if (text == "out") return Direction::out;
    if (text == "in") return Direction::in;
    if (text == "both") return Direction::both;
    return std::nullopt;
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::duplicate_page_id: return "duplicate_page_id";
    case ViolationKind::duplicate_title: return "duplicate_title";
    case ViolationKind::duplicate_category_id: return "duplicate_category_id";
    case ViolationKind::empty_title: return "empty_title";
    case ViolationKind::dangling_link: return "dangling_link";
    case ViolationKind::no_categories: return "no_categories";
    case ViolationKind::missing_category: return "missing_category";
    case ViolationKind::missing_parent: return "missing_parent";
    case ViolationKind::category_cycle: return "category_cycle";
    case ViolationKind::root_count: return "root_count";
    }
    return "unknown";
}

namespace {

// Reports every parent cycle once, starting from its smallest-position member.
void find_category_cycles(const RawCorpus& raw,
                          const std::unordered_map<std::uint64_t, std::size_t>& cat_index,
                          std::vector<Violation>& out) {
    const std::size_t n = raw.categories.size();
    std::vector<std::uint8_t> state(n, 0); // 0 unvisited, 1 on current path, 2 finished
    std::vector<std::size_t> path;
    for (std::size_t start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        path.clear();
        std::size_t cur = start;
        for (;;) {
            if (state[cur] == 2) break;
            if (state[cur] == 1) {
                auto it = std::find(path.begin(), path.end(), cur);
                std::ostringstream msg;
                msg << "category cycle:";
                for (auto p = it; p != path.end(); ++p) msg << ' ' << raw.categories[*p].id.value << " ->";
                msg << ' ' << raw.categories[cur].id.value;
                out.push_back({ViolationKind::category_cycle, msg.str()});
                break;
            }
            state[cur] = 1;
            path.push_back(cur);
            const auto& parent = raw.categories[cur].parent;
            if (!parent) break;
            auto pit = cat_index.find(parent->value);
            if (pit == cat_index.end()) break;
            cur = pit->second;
        }
        for (auto p : path) state[p] = 2;
    }
}

} // namespace

ValidationReport validate(const RawCorpus& raw, const LoadOptions& options) {
    ValidationReport report;
    auto& v = report.violations;

    std::unordered_map<std::uint64_t, std::size_t> page_index;
    std::unordered_set<std::string> titles;
    for (std::size_t i = 0; i < raw.pages.size(); ++i) {
        const auto& page = raw.pages[i];
        if (!page_index.emplace(page.id.value, i).second) {
            v.push_back({ViolationKind::duplicate_page_id,
                         "duplicate page id " + std::to_string(page.id.value)});
        }
        if (page.title.empty()) {
            v.push_back({ViolationKind::empty_title,
                         "page " + std::to_string(page.id.value) + " has an empty title"});
        } else if (!titles.insert(page.title).second) {
            v.push_back({ViolationKind::duplicate_title, "duplicate title \"" + page.title + "\""});
        }
    }

    std::unordered_map<std::uint64_t, std::size_t> cat_index;
    std::size_t roots = 0;
    for (std::size_t i = 0; i < raw.categories.size(); ++i) {
        const auto& cat = raw.categories[i];
        if (!cat_index.emplace(cat.id.value, i).second) {
            v.push_back({ViolationKind::duplicate_category_id,
                         "duplicate category id " + std::to_string(cat.id.value)});
        }
        if (!cat.parent) ++roots;
    }

    for (const auto& page : raw.pages) {
        const auto pid = std::to_string(page.id.value);
        std::unordered_set<std::uint64_t> seen;
        std::size_t self_links = 0;
        std::size_t duplicates = 0;
        for (auto target : page.links) {
            if (target == page.id) {
                ++self_links;
                continue;
            }
            if (!seen.insert(target.value).second) {
                ++duplicates;
                continue;
            }
            if (!page_index.count(target.value)) {
                v.push_back({ViolationKind::dangling_link,
                             "page " + pid + " links to missing page " + std::to_string(target.value)});
            }
        }
        if (self_links) report.warnings.push_back("page " + pid + ": dropped self-link");
        if (duplicates) {
            report.warnings.push_back("page " + pid + ": dropped " + std::to_string(duplicates) +
                                      " duplicate link(s)");
        }
        if (page.categories.empty()) {
            v.push_back({ViolationKind::no_categories, "page " + pid + " has no categories"});
        }
        for (auto cat : page.categories) {
            if (!cat_index.count(cat.value)) {
                v.push_back({ViolationKind::missing_category,
                             "page " + pid + " references missing category " + std::to_string(cat.value)});
            }
        }
    }

    for (const auto& cat : raw.categories) {
        if (cat.parent && !cat_index.count(cat.parent->value)) {
            v.push_back({ViolationKind::missing_parent,
                         "category " + std::to_string(cat.id.value) + " has missing parent " +
                             std::to_string(cat.parent->value)});
        }
    }

    find_category_cycles(raw, cat_index, v);

    if (roots != 1) {
        const auto msg = "category tree has " + std::to_string(roots) + " roots";
        if (options.lenient && roots > 1) {
            report.warnings.push_back(msg + " (accepted as a forest)");
        } else {
            v.push_back({ViolationKind::root_count, msg + ", expected exactly one"});
        }
    }
    return report;
}

CategoryTree::CategoryTree(std::vector<Category> categories) : categories_(std::move(categories)) {
    std::sort(categories_.begin(), categories_.end(),
              [](const Category& a, const Category& b) { return a.id < b.id; });
    index_.reserve(categories_.size());
    for (std::size_t i = 0; i < categories_.size(); ++i) index_.emplace(categories_[i].id.value, i);
}

const Category& CategoryTree::at(CategoryId id) const {
    auto it = index_.find(id.value);
    if (it == index_.end()) throw NotFoundError("unknown category " + std::to_string(id.value));
    return categories_[it->second];
}

Corpus Corpus::build(RawCorpus raw, const LoadOptions& options, std::vector<std::string>* warnings) {
    auto report = validate(raw, options);
    if (!report.ok()) {
        std::vector<std::string> uniqueness;
        std::vector<std::string> all;
        for (const auto& violation : report.violations) {
            all.push_back(violation.message);
            if (violation.kind == ViolationKind::duplicate_page_id ||
                violation.kind == ViolationKind::duplicate_title ||
                violation.kind == ViolationKind::duplicate_category_id) {
                uniqueness.push_back(violation.message);
            }
        }
        if (!uniqueness.empty()) {
            std::string what = "uniqueness violated: " + uniqueness.front();
            if (uniqueness.size() > 1) what += " (and " + std::to_string(uniqueness.size() - 1) + " more)";
            throw UniquenessError(what, std::move(uniqueness));
        }
        std::string what = "invalid corpus: " + all.front();
        if (all.size() > 1) what += " (and " + std::to_string(all.size() - 1) + " more)";
        throw ValidationError(what, std::move(all));
    }
    if (warnings) {
        warnings->insert(warnings->end(), report.warnings.begin(), report.warnings.end());
    }

    std::sort(raw.pages.begin(), raw.pages.end(),
              [](const RawPage& a, const RawPage& b) { return a.id < b.id; });
    if (raw.pages.size() > std::numeric_limits<PageIndex>::max()) {
        throw ArgumentError("corpus exceeds the supported page count");
    }

    Corpus c;
    const auto n = static_cast<PageIndex>(raw.pages.size());
    c.ids_.reserve(n);
    c.titles_.reserve(n);
    c.id_index_.reserve(n);
    c.title_index_.reserve(n);
    for (PageIndex i = 0; i < n; ++i) {
        c.ids_.push_back(raw.pages[i].id);
        c.id_index_.emplace(raw.pages[i].id.value, i);
    }

    std::size_t total_links = 0;
    for (const auto& page : raw.pages) total_links += page.links.size();
    c.out_offsets_.assign(n + 1, 0);
    c.out_targets_.reserve(total_links);
    c.category_offsets_.assign(n + 1, 0);
    std::vector<std::uint64_t> in_degree(n, 0);
    for (PageIndex i = 0; i < n; ++i) {
        auto& page = raw.pages[i];
        const auto begin = c.out_targets_.size();
        for (auto target : page.links) {
            if (target == page.id) continue;
            c.out_targets_.push_back(c.id_index_.at(target.value));
        }
        auto first = c.out_targets_.begin() + static_cast<std::ptrdiff_t>(begin);
        std::sort(first, c.out_targets_.end());
        c.out_targets_.erase(std::unique(first, c.out_targets_.end()), c.out_targets_.end());
        c.out_offsets_[i + 1] = c.out_targets_.size();
        for (auto it = c.out_targets_.begin() + static_cast<std::ptrdiff_t>(begin); it != c.out_targets_.end(); ++it) {
            ++in_degree[*it];
        }

        std::sort(page.categories.begin(), page.categories.end());
        page.categories.erase(std::unique(page.categories.begin(), page.categories.end()), page.categories.end());
        c.page_categories_.insert(c.page_categories_.end(), page.categories.begin(), page.categories.end());
        c.category_offsets_[i + 1] = c.page_categories_.size();

        c.titles_.push_back(std::move(page.title));
        c.title_index_.emplace(c.titles_.back(), i);
    }

    // Sources are visited in ascending index order, so each in-list comes out sorted.
    c.in_offsets_.assign(n + 1, 0);
    for (PageIndex i = 0; i < n; ++i) c.in_offsets_[i + 1] = c.in_offsets_[i] + in_degree[i];
    c.in_sources_.resize(c.out_targets_.size());
    std::vector<std::uint64_t> cursor(c.in_offsets_.begin(), c.in_offsets_.end() - 1);
    for (PageIndex src = 0; src < n; ++src) {
        for (auto t : c.out_links(src)) c.in_sources_[cursor[t]++] = src;
    }

    c.titles_sorted_.resize(n);
    std::iota(c.titles_sorted_.begin(), c.titles_sorted_.end(), PageIndex{0});
    std::sort(c.titles_sorted_.begin(), c.titles_sorted_.end(),
              [&c](PageIndex a, PageIndex b) { return c.titles_[a] < c.titles_[b]; });

    std::vector<Category> categories;
    categories.reserve(raw.categories.size());
    for (auto& cat : raw.categories) categories.push_back({cat.id, std::move(cat.name), cat.parent});
    c.tree_ = CategoryTree(std::move(categories));
    return c;
}

std::optional<PageIndex> Corpus::find(PageId id) const {
    auto it = id_index_.find(id.value);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<PageIndex> Corpus::find_title(std::string_view title) const {
    auto it = title_index_.find(std::string(title));
    if (it == title_index_.end()) return std::nullopt;
    return it->second;
}

PageIndex Corpus::index_of(PageId id) const {
    if (auto found = find(id)) return *found;
    throw NotFoundError("unknown page id " + std::to_string(id.value));
}

PageIndex Corpus::index_of_title(std::string_view title) const {
    if (auto found = find_title(title)) return *found;
    throw NotFoundError("unknown title \"" + std::string(title) + "\"", suggest(title));
}

std::span<const PageIndex> Corpus::out_links(PageIndex page) const {
    return {out_targets_.data() + out_offsets_[page], out_targets_.data() + out_offsets_[page + 1]};
}

std::span<const PageIndex> Corpus::in_links(PageIndex page) const {
    return {in_sources_.data() + in_offsets_[page], in_sources_.data() + in_offsets_[page + 1]};
}

std::span<const CategoryId> Corpus::categories(PageIndex page) const {
    return {page_categories_.data() + category_offsets_[page],
            page_categories_.data() + category_offsets_[page + 1]};
}

std::vector<std::string> Corpus::suggest(std::string_view word, std::size_t limit) const {
    std::vector<std::string> out;
    auto less_than = [this](PageIndex page, std::string_view key) {
        return std::string_view(titles_[page]) < key;
    };
    for (std::size_t len = word.size(); len > 0 && out.empty(); --len) {
        const auto prefix = word.substr(0, len);
        auto it = std::lower_bound(titles_sorted_.begin(), titles_sorted_.end(), prefix, less_than);
        for (; it != titles_sorted_.end() && out.size() < limit; ++it) {
            if (!std::string_view(titles_[*it]).starts_with(prefix)) break;
            out.push_back(titles_[*it]);
        }
    }
    return out;
}

RawCorpus Corpus::to_raw() const {
    RawCorpus raw;
    raw.pages.reserve(page_count());
    for (PageIndex i = 0; i < page_count(); ++i) {
        RawPage page{ids_[i], titles_[i], {}, {}};
        for (auto t : out_links(i)) page.links.push_back(ids_[t]);
        auto cats = categories(i);
        page.categories.assign(cats.begin(), cats.end());
        raw.pages.push_back(std::move(page));
    }
    for (const auto& cat : tree_.categories()) raw.categories.push_back({cat.id, cat.name, cat.parent});
    return raw;
}

bool Corpus::operator==(const Corpus& other) const {
    return ids_ == other.ids_ && titles_ == other.titles_ && out_offsets_ == other.out_offsets_ &&
           out_targets_ == other.out_targets_ && category_offsets_ == other.category_offsets_ &&
           page_categories_ == other.page_categories_ && tree_ == other.tree_;
}

std::vector<PageId> neighbors(const Corpus& corpus, PageId page, Direction direction) {
    const auto index = corpus.index_of(page);
    std::vector<PageIndex> merged;
    if (direction == Direction::out) {
        auto out = corpus.out_links(index);
        merged.assign(out.begin(), out.end());
    } else if (direction == Direction::in) {
        auto in = corpus.in_links(index);
        merged.assign(in.begin(), in.end());
    } else {
        auto out = corpus.out_links(index);
        auto in = corpus.in_links(index);
        std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(merged));
    }
    std::vector<PageId> ids;
    ids.reserve(merged.size());
    for (auto m : merged) ids.push_back(corpus.id(m));
    return ids;
}

} // namespace synarch
