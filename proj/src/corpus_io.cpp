#include "synarch/corpus.hpp"

#include "synarch/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace synarch {

namespace {

using nlohmann::json;

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t byte) {
    Position pos;
    const auto end = std::min(byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

// Structural errors found after the JSON itself parsed have no byte offset.
[[noreturn]] void structure_error(const std::string& where, const std::string& what) {
    throw ParseError("corpus format: " + where + ": " + what, 0, 0);
}

std::uint64_t read_id(const json& value, const std::string& where) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer()) structure_error(where, "id must be nonnegative");
    structure_error(where, "expected an integer id");
}

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
    for (const auto& item : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            structure_error(where, "unknown key \"" + item.key() + "\"");
        }
    }
}

const json& require(const json& object, const char* key, const std::string& where) {
    auto it = object.find(key);
    if (it == object.end()) structure_error(where, std::string("missing key \"") + key + "\"");
    return *it;
}

RawPage read_page(const json& node, std::size_t position) {
    const auto where = "pages[" + std::to_string(position) + "]";
    if (!node.is_object()) structure_error(where, "expected an object");
    reject_unknown_keys(node, {"id", "title", "links", "categories"}, where);

    RawPage page;
    page.id = PageId{read_id(require(node, "id", where), where + ".id")};
    const auto& title = require(node, "title", where);
    if (!title.is_string()) structure_error(where + ".title", "expected a string");
    page.title = title.get<std::string>();

    const auto& links = require(node, "links", where);
    if (!links.is_array()) structure_error(where + ".links", "expected an array");
    page.links.reserve(links.size());
    for (const auto& link : links) page.links.push_back(PageId{read_id(link, where + ".links")});

    const auto& cats = require(node, "categories", where);
    if (!cats.is_array()) structure_error(where + ".categories", "expected an array");
    for (const auto& cat : cats) page.categories.push_back(CategoryId{read_id(cat, where + ".categories")});
    return page;
}

RawCategory read_category(const json& node, std::size_t position) {
    const auto where = "categories[" + std::to_string(position) + "]";
    if (!node.is_object()) structure_error(where, "expected an object");
    reject_unknown_keys(node, {"id", "name", "parent"}, where);

    RawCategory cat;
    cat.id = CategoryId{read_id(require(node, "id", where), where + ".id")};
    const auto& name = require(node, "name", where);
    if (!name.is_string()) structure_error(where + ".name", "expected a string");
    cat.name = name.get<std::string>();
    const auto& parent = require(node, "parent", where);
    if (!parent.is_null()) cat.parent = CategoryId{read_id(parent, where + ".parent")};
    return cat;
}

} // namespace

RawCorpus parse_corpus(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto pos = position_of(text, e.byte);
        throw ParseError("malformed corpus at line " + std::to_string(pos.line) + ", column " +
                             std::to_string(pos.column) + ": " + e.what(),
                         pos.line, pos.column);
    }
    if (!doc.is_object()) structure_error("document", "expected a top-level object");
    reject_unknown_keys(doc, {"pages", "categories"}, "document");

    const auto& pages = require(doc, "pages", "document");
    const auto& categories = require(doc, "categories", "document");
    if (!pages.is_array()) structure_error("pages", "expected an array");
    if (!categories.is_array()) structure_error("categories", "expected an array");

    RawCorpus raw;
    raw.pages.reserve(pages.size());
    for (std::size_t i = 0; i < pages.size(); ++i) raw.pages.push_back(read_page(pages[i], i));
    raw.categories.reserve(categories.size());
    for (std::size_t i = 0; i < categories.size(); ++i) {
        raw.categories.push_back(read_category(categories[i], i));
    }
    return raw;
}

std::string serialize_corpus(const Corpus& corpus) {
    // One record per line so corpora diff cleanly.
    std::string out = "{\"pages\": [\n";
    for (PageIndex i = 0; i < corpus.page_count(); ++i) {
        nlohmann::ordered_json page;
        page["id"] = corpus.id(i).value;
        page["title"] = corpus.title(i);
        auto& links = page["links"] = nlohmann::ordered_json::array();
        for (auto t : corpus.out_links(i)) links.push_back(corpus.id(t).value);
        auto& cats = page["categories"] = nlohmann::ordered_json::array();
        for (auto c : corpus.categories(i)) cats.push_back(c.value);
        out += "  ";
        out += page.dump();
        if (i + 1 < corpus.page_count()) out += ',';
        out += '\n';
    }
    out += "], \"categories\": [\n";
    const auto cats = corpus.tree().categories();
    for (std::size_t i = 0; i < cats.size(); ++i) {
        nlohmann::ordered_json cat;
        cat["id"] = cats[i].id.value;
        cat["name"] = cats[i].name;
        cat["parent"] = cats[i].parent ? nlohmann::ordered_json(cats[i].parent->value) : nullptr;
        out += "  ";
        out += cat.dump();
        if (i + 1 < cats.size()) out += ',';
        out += '\n';
    }
    out += "]}\n";
    return out;
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options,
                   std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open corpus file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const auto text = std::move(buffer).str();
    return Corpus::build(parse_corpus(text), options, warnings);
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write corpus file " + path.string());
    out << serialize_corpus(corpus);
    if (!out.flush()) throw Error("failed writing corpus file " + path.string());
}

} // namespace synarch
