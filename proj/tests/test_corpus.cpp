#include "synarch/corpus.hpp"
#include "synarch/errors.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>

using namespace synarch;
using synarch::testing::corpus_of;
using synarch::testing::ids;
using synarch::testing::raw_corpus;
using synarch::testing::TempDir;

namespace {

const char* kTwoPages = R"({
  "pages": [
    {"id": 1, "title": "A", "links": [2], "categories": [10]},
    {"id": 2, "title": "B", "links": [], "categories": [10]}
  ],
  "categories": [{"id": 10, "name": "root", "parent": null}]
})";

bool reciprocal(const Corpus& c) {
    std::size_t in_total = 0;
    for (PageIndex p = 0; p < c.page_count(); ++p) {
        for (auto q : c.out_links(p)) {
            auto in = c.in_links(q);
            if (!std::binary_search(in.begin(), in.end(), p)) return false;
        }
        for (auto q : c.in_links(p)) {
            auto out = c.out_links(q);
            if (!std::binary_search(out.begin(), out.end(), p)) return false;
        }
        in_total += c.in_links(p).size();
    }
    return in_total == c.link_count();
}

std::size_t count_kind(const ValidationReport& r, ViolationKind kind) {
    return static_cast<std::size_t>(std::count_if(r.violations.begin(), r.violations.end(),
                                                  [kind](const Violation& v) { return v.kind == kind; }));
}

} // namespace

TEST(LoadCorpus, DerivesInLinks) {
    const auto corpus = Corpus::build(parse_corpus(kTwoPages));
    const auto a = PageId{1};
    const auto b = PageId{2};
    EXPECT_EQ(neighbors(corpus, b, Direction::in), ids({1}));
    EXPECT_TRUE(neighbors(corpus, a, Direction::in).empty());
    EXPECT_EQ(corpus.link_count(), 1u);
}

TEST(LoadCorpus, DuplicateTitleIsUniquenessError) {
    auto raw = raw_corpus({{1, "Road", {}}, {2, "Road", {}}});
    try {
        Corpus::build(raw);
        FAIL() << "expected UniquenessError";
    } catch (const UniquenessError& e) {
        EXPECT_NE(std::string(e.what()).find("Road"), std::string::npos);
        ASSERT_EQ(e.offenders().size(), 1u);
    }
}

TEST(LoadCorpus, DuplicateIdIsUniquenessError) {
    EXPECT_THROW(Corpus::build(raw_corpus({{1, "a", {}}, {1, "b", {}}})), UniquenessError);
}

TEST(LoadCorpus, RoundTripThroughDisk) {
    TempDir dir;
    const auto corpus = generate_synthetic({.topics = 4, .pages_per_topic = 12, .seed = 7});
    save_corpus(corpus, dir / "c.json");
    EXPECT_EQ(load_corpus(dir / "c.json"), corpus);
}

TEST(LoadCorpus, ValidationErrorListsEveryOffender) {
    auto raw = raw_corpus({{1, "a", {7, 8}}, {2, "b", {}, {99}}});
    try {
        Corpus::build(raw);
        FAIL() << "expected ValidationError";
    } catch (const UniquenessError&) {
        FAIL() << "not a uniqueness problem";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.offenders().size(), 3u);
    }
}

TEST(LoadCorpus, StripsSelfAndDuplicateLinksWithWarning) {
    std::vector<std::string> warnings;
    const auto corpus = Corpus::build(raw_corpus({{1, "a", {1, 2, 2}}, {2, "b", {}}}), {}, &warnings);
    EXPECT_EQ(neighbors(corpus, PageId{1}, Direction::out), ids({2}));
    EXPECT_EQ(warnings.size(), 2u);
}

TEST(LoadCorpus, MissingFileIsNotFound) {
    EXPECT_THROW(load_corpus("/nonexistent/corpus.json"), NotFoundError);
}

TEST(ParseCorpus, MalformedJsonReportsLineAndColumn) {
    const std::string text = "{\n  \"pages\": [\n    {\"id\": 1,, }\n]}";
    try {
        parse_corpus(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GT(e.column(), 1u);
    }
}

TEST(ParseCorpus, RejectsUnknownKeys) {
    EXPECT_THROW(parse_corpus(R"({"pages": [], "categories": [], "extra": 1})"), ParseError);
    EXPECT_THROW(parse_corpus(R"({"pages": [{"id": 1, "title": "a", "links": [], "categories": [1], "body": ""}],
                                 "categories": []})"),
                 ParseError);
}

TEST(ParseCorpus, RejectsNegativeAndNonIntegerIds) {
    EXPECT_THROW(parse_corpus(R"({"pages": [{"id": -1, "title": "a", "links": [], "categories": []}],
                                 "categories": []})"),
                 ParseError);
    EXPECT_THROW(parse_corpus(R"({"pages": [{"id": 1.5, "title": "a", "links": [], "categories": []}],
                                 "categories": []})"),
                 ParseError);
}

TEST(Validate, DanglingLink) {
    const auto report = validate(raw_corpus({{1, "a", {5}}}));
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].kind, ViolationKind::dangling_link);
}

TEST(Validate, CategoryCycleIsNamed) {
    auto raw = raw_corpus({{1, "a", {}}});
    raw.categories.push_back({CategoryId{3}, "x", CategoryId{4}});
    raw.categories.push_back({CategoryId{4}, "y", CategoryId{3}});
    const auto report = validate(raw);
    ASSERT_EQ(count_kind(report, ViolationKind::category_cycle), 1u);
    const auto& msg = std::find_if(report.violations.begin(), report.violations.end(), [](const Violation& v) {
                          return v.kind == ViolationKind::category_cycle;
                      })->message;
    EXPECT_NE(msg.find("3 -> 4 -> 3"), std::string::npos) << msg;
}

TEST(Validate, WellFormedIsEmpty) {
    const auto report = validate(raw_corpus({{1, "a", {2}}, {2, "b", {1}}}));
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(report.warnings.empty());
}

TEST(Validate, PageInvariants) {
    auto raw = raw_corpus({{1, "", {}}, {2, "b", {}, {}}, {3, "c", {}, {42}}});
    const auto report = validate(raw);
    EXPECT_EQ(count_kind(report, ViolationKind::empty_title), 1u);
    EXPECT_EQ(count_kind(report, ViolationKind::no_categories), 1u);
    EXPECT_EQ(count_kind(report, ViolationKind::missing_category), 1u);
}

TEST(Validate, ForestNeedsLenient) {
    auto raw = raw_corpus({{1, "a", {}, {1, 2}}});
    raw.categories.push_back({CategoryId{2}, "second root", std::nullopt});
    EXPECT_EQ(count_kind(validate(raw), ViolationKind::root_count), 1u);

    const auto lenient = validate(raw, LoadOptions{.lenient = true});
    EXPECT_TRUE(lenient.ok());
    EXPECT_EQ(lenient.warnings.size(), 1u);
    EXPECT_NO_THROW(Corpus::build(raw, LoadOptions{.lenient = true}));
}

TEST(Validate, MissingParent) {
    auto raw = raw_corpus({{1, "a", {}}}, {{5, 77}});
    EXPECT_EQ(count_kind(validate(raw), ViolationKind::missing_parent), 1u);
}

TEST(Validate, CycleDetectionAgreesWithPathFollowing) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 100)(rng);
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::uniform_real_distribution<double> unit(0, 1);
        for (int i = 0; i < n; ++i) {
            // Mostly point to a smaller id (tree-like), sometimes anywhere, sometimes nowhere.
            const double r = unit(rng);
            if (r < 0.05) {
                parent[i] = -1;
            } else if (r < 0.1 || i == 0) {
                parent[i] = std::uniform_int_distribution<int>(0, n - 1)(rng);
            } else {
                parent[i] = std::uniform_int_distribution<int>(0, i - 1)(rng);
            }
        }
        RawCorpus raw;
        for (int i = 0; i < n; ++i) {
            std::optional<CategoryId> p;
            if (parent[i] >= 0) p = CategoryId{static_cast<std::uint64_t>(parent[i])};
            raw.categories.push_back({CategoryId{static_cast<std::uint64_t>(i)}, "c", p});
        }
        const auto expected = oracle::nodes_on_cycles(parent);
        const auto report = validate(raw, LoadOptions{.lenient = true});

        std::set<int> reported;
        for (const auto& v : report.violations) {
            if (v.kind != ViolationKind::category_cycle) continue;
            std::istringstream s(v.message.substr(v.message.find(':') + 1));
            std::string token;
            while (s >> token) {
                if (token != "->") reported.insert(std::stoi(token));
            }
        }
        ASSERT_EQ(reported, expected) << "trial " << trial;
    }
}

TEST(Neighbors, Directions) {
    const auto corpus = corpus_of({{1, "A", {2}}, {2, "B", {}}, {3, "C", {1}}});
    EXPECT_EQ(neighbors(corpus, PageId{1}, Direction::out), ids({2}));
    EXPECT_EQ(neighbors(corpus, PageId{1}, Direction::in), ids({3}));
    EXPECT_EQ(neighbors(corpus, PageId{1}, Direction::both), ids({2, 3}));
    EXPECT_THROW(neighbors(corpus, PageId{9}, Direction::out), NotFoundError);
}

TEST(Corpus, TitleLookupSuggestsByPrefix) {
    const auto corpus = corpus_of({{1, "road", {}}, {2, "roadster", {}}, {3, "rock", {}}, {4, "zebra", {}}});
    EXPECT_EQ(corpus.suggest("roads"), (std::vector<std::string>{"roadster"}));
    EXPECT_EQ(corpus.suggest("roa"), (std::vector<std::string>{"road", "roadster"}));
    EXPECT_EQ(corpus.suggest("rx"), (std::vector<std::string>{"road", "roadster", "rock"}));
    EXPECT_TRUE(corpus.suggest("zzz-absent").size() == 1);
    EXPECT_TRUE(corpus.suggest("qqq").empty());
    try {
        corpus.index_of_title("roadz");
        FAIL();
    } catch (const NotFoundError& e) {
        EXPECT_EQ(e.suggestions(), (std::vector<std::string>{"road", "roadster"}));
    }
}

TEST(Corpus, TitlesAreExactStrings) {
    const auto corpus = corpus_of({{1, "Road", {}}, {2, "road", {}}, {3, "дорога", {}}});
    EXPECT_EQ(corpus.find_title("Road"), PageIndex{0});
    EXPECT_EQ(corpus.find_title("road"), PageIndex{1});
    EXPECT_EQ(corpus.find_title("дорога"), PageIndex{2});
    EXPECT_FALSE(corpus.find_title("ROAD"));
}

TEST(GenerateSynthetic, SizesFollowConstruction) {
    const auto corpus = generate_synthetic({.topics = 3, .pages_per_topic = 10, .p_intra = 0.3, .p_inter = 0.05});
    EXPECT_EQ(corpus.page_count(), 30u);
    EXPECT_EQ(corpus.tree().size(), 4u);
    for (PageIndex p = 0; p < corpus.page_count(); ++p) {
        auto cats = corpus.categories(p);
        ASSERT_EQ(cats.size(), 1u);
        EXPECT_EQ(cats[0].value, synthetic_topic(corpus.id(p), 10) + 1);
    }
}

TEST(GenerateSynthetic, PureTopicsWhenInterIsZero) {
    const auto corpus = generate_synthetic({.topics = 4, .pages_per_topic = 8, .p_intra = 1.0, .p_inter = 0.0});
    for (PageIndex p = 0; p < corpus.page_count(); ++p) {
        const auto topic = synthetic_topic(corpus.id(p), 8);
        EXPECT_EQ(corpus.in_links(p).size(), 7u);
        for (auto q : corpus.in_links(p)) EXPECT_EQ(synthetic_topic(corpus.id(q), 8), topic);
    }
}

TEST(GenerateSynthetic, Deterministic) {
    const SyntheticParams params{.topics = 5, .pages_per_topic = 20, .seed = 99};
    EXPECT_EQ(generate_synthetic(params), generate_synthetic(params));
    auto other = params;
    other.seed = 100;
    EXPECT_FALSE(generate_synthetic(params) == generate_synthetic(other));
}

TEST(GenerateSynthetic, RejectsBadArguments) {
    EXPECT_THROW(generate_synthetic({.topics = 0}), ArgumentError);
    EXPECT_THROW(generate_synthetic({.pages_per_topic = 0}), ArgumentError);
    EXPECT_THROW(generate_synthetic({.p_intra = 0.1, .p_inter = 0.2}), ArgumentError);
    EXPECT_THROW(generate_synthetic({.p_intra = 1.5, .p_inter = 0.2}), ArgumentError);
}

TEST(GenerateSynthetic, LinkDensityMatchesProbabilities) {
    const auto corpus = generate_synthetic({.topics = 4, .pages_per_topic = 100, .p_intra = 0.2, .p_inter = 0.02});
    std::size_t intra = 0, inter = 0;
    for (PageIndex p = 0; p < corpus.page_count(); ++p) {
        for (auto q : corpus.out_links(p)) {
            (synthetic_topic(corpus.id(p), 100) == synthetic_topic(corpus.id(q), 100) ? intra : inter)++;
        }
    }
    const double intra_pairs = 4.0 * 100 * 99;
    const double inter_pairs = 400.0 * 300;
    EXPECT_NEAR(intra / intra_pairs, 0.2, 0.01);
    EXPECT_NEAR(inter / inter_pairs, 0.02, 0.002);
}

TEST(CorpusProperties, ReciprocityAndRoundTripOverRandomCorpora) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        SyntheticParams params;
        params.topics = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        params.pages_per_topic = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
        params.p_intra = std::uniform_real_distribution<double>(0, 1)(rng);
        params.p_inter = std::uniform_real_distribution<double>(0, params.p_intra)(rng);
        params.seed = rng();
        const auto corpus = generate_synthetic(params);
        ASSERT_TRUE(reciprocal(corpus)) << "trial " << trial;
        ASSERT_EQ(Corpus::build(parse_corpus(serialize_corpus(corpus))), corpus) << "trial " << trial;
    }
}

TEST(CorpusProperties, LoadingIsTotalUnderByteMutation) {
    const auto text = serialize_corpus(generate_synthetic({.topics = 2, .pages_per_topic = 5, .seed = 1}));
    std::mt19937_64 rng(5);
    const std::string alphabet = "{}[],:\"0123456789 -nulltrue";
    std::size_t accepted = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto mutated = text;
        const int edits = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int e = 0; e < edits; ++e) {
            const auto pos = std::uniform_int_distribution<std::size_t>(0, mutated.size() - 1)(rng);
            mutated[pos] = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
        }
        try {
            const auto corpus = Corpus::build(parse_corpus(mutated));
            ++accepted;
            ASSERT_TRUE(reciprocal(corpus));
            ASSERT_TRUE(validate(corpus.to_raw()).ok());
        } catch (const Error&) {
            // rejected as a whole
        }
    }
    EXPECT_GT(accepted, 0u);
}
