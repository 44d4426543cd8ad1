#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace synarch {

struct PageId {
    std::uint64_t value = 0;
    auto operator<=>(const PageId&) const = default;
};

struct CategoryId {
    std::uint64_t value = 0;
    auto operator<=>(const CategoryId&) const = default;
};

/// Dense position of a page inside a Corpus. Ascending index order equals
/// ascending PageId order.
using PageIndex = std::uint32_t;

enum class Direction { out, in, both };

std::optional<Direction> parse_direction(std::string_view text);

// Unvalidated corpus as read from a file or produced by the generator.

struct RawPage {
    PageId id;
    std::string title;
    std::vector<PageId> links;
    std::vector<CategoryId> categories;
};

struct RawCategory {
    CategoryId id;
    std::string name;
    std::optional<CategoryId> parent;
};

struct RawCorpus {
    std::vector<RawPage> pages;
    std::vector<RawCategory> categories;
};

enum class ViolationKind {
    duplicate_page_id,
    duplicate_title,
    duplicate_category_id,
    empty_title,
    dangling_link,
    no_categories,
    missing_category,
    missing_parent,
    category_cycle,
    root_count,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    /// Conditions that loading repairs or tolerates (self-links, duplicate
    /// links, forests in lenient mode).
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

struct LoadOptions {
    /// Accept a category forest instead of a single-root tree.
    bool lenient = false;
};

ValidationReport validate(const RawCorpus& raw, const LoadOptions& options = {});

struct Category {
    CategoryId id;
    std::string name;
    std::optional<CategoryId> parent;

    bool operator==(const Category&) const = default;
};

class CategoryTree {
public:
    CategoryTree() = default;
    explicit CategoryTree(std::vector<Category> categories);

    std::size_t size() const noexcept { return categories_.size(); }
    bool contains(CategoryId id) const { return index_.count(id.value) != 0; }
    const Category& at(CategoryId id) const;
    /// Categories in ascending id order.
    std::span<const Category> categories() const noexcept { return categories_; }

    bool operator==(const CategoryTree& other) const { return categories_ == other.categories_; }

private:
    std::vector<Category> categories_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Immutable link graph plus category tree. Out- and in-link lists are held in
/// compressed sparse rows over dense page indices, sorted ascending.
class Corpus {
public:
    /// Validates and normalizes `raw`. Throws UniquenessError on duplicate ids
    /// or titles and ValidationError on any other violation; never returns a
    /// partially built corpus.
    static Corpus build(RawCorpus raw, const LoadOptions& options = {},
                        std::vector<std::string>* warnings = nullptr);

    std::size_t page_count() const noexcept { return ids_.size(); }
    std::size_t link_count() const noexcept { return out_targets_.size(); }

    std::optional<PageIndex> find(PageId id) const;
    std::optional<PageIndex> find_title(std::string_view title) const;
    /// Throws NotFoundError.
    PageIndex index_of(PageId id) const;
    /// Throws NotFoundError carrying prefix suggestions.
    PageIndex index_of_title(std::string_view title) const;

    PageId id(PageIndex page) const { return ids_[page]; }
    const std::string& title(PageIndex page) const { return titles_[page]; }
    std::span<const PageIndex> out_links(PageIndex page) const;
    std::span<const PageIndex> in_links(PageIndex page) const;
    std::span<const CategoryId> categories(PageIndex page) const;

    const CategoryTree& tree() const noexcept { return tree_; }

    /// Up to `limit` titles sharing the longest available prefix with `word`,
    /// in lexicographic order.
    std::vector<std::string> suggest(std::string_view word, std::size_t limit = 5) const;

    /// Back to the unvalidated form, pages and categories in ascending id order.
    RawCorpus to_raw() const;

    bool operator==(const Corpus& other) const;

private:
    Corpus() = default;

    std::vector<PageId> ids_;
    std::vector<std::string> titles_;
    std::vector<std::uint64_t> out_offsets_;
    std::vector<PageIndex> out_targets_;
    std::vector<std::uint64_t> in_offsets_;
    std::vector<PageIndex> in_sources_;
    std::vector<std::uint64_t> category_offsets_;
    std::vector<CategoryId> page_categories_;
    CategoryTree tree_;

    std::unordered_map<std::uint64_t, PageIndex> id_index_;
    std::unordered_map<std::string, PageIndex> title_index_;
    std::vector<PageIndex> titles_sorted_;
};

/// Γ⁺, Γ⁻ or their union, in ascending PageId order. Throws NotFoundError.
std::vector<PageId> neighbors(const Corpus& corpus, PageId page, Direction direction);

// Corpus file format: UTF-8 JSON with "pages" and "categories" arrays.

/// Throws ParseError with line/column on malformed input or unknown keys.
RawCorpus parse_corpus(std::string_view text);
std::string serialize_corpus(const Corpus& corpus);

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options = {},
                   std::vector<std::string>* warnings = nullptr);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

struct SyntheticParams {
    std::size_t topics = 5;
    std::size_t pages_per_topic = 40;
    double p_intra = 0.3;
    double p_inter = 0.01;
    std::uint64_t seed = 0;
};

/// Planted-topic corpus. Page ids run 0..topics*pages_per_topic-1 grouped by
/// topic; category 0 is the root and topic t is category t+1.
Corpus generate_synthetic(const SyntheticParams& params);

/// Topic index of a page in a corpus produced by generate_synthetic.
std::size_t synthetic_topic(PageId page, std::size_t pages_per_topic);

} // namespace synarch

template <>
struct std::hash<synarch::PageId> {
    std::size_t operator()(const synarch::PageId& id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
