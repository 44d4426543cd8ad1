#include "synarch/clustering.hpp"
#include "synarch/corpus.hpp"
#include "synarch/errors.hpp"
#include "synarch/hits.hpp"
#include "synarch/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace synarch;

namespace {

QueryParams make_params(std::size_t top_n, std::size_t top_m, double k, double eps, std::size_t max_iter,
                        std::size_t in_cap, double max_cluster_weight, std::size_t include_ancestors) {
    QueryParams p;
    p.hits = {top_n, top_m, k, eps, max_iter, in_cap};
    p.clustering = {max_cluster_weight, include_ancestors};
    return p;
}

py::dict validate_file(const std::filesystem::path& path, bool lenient) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open corpus file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const auto report = validate(parse_corpus(buffer.str()), LoadOptions{lenient});
    py::list violations;
    for (const auto& v : report.violations) {
        violations.append(py::dict(py::arg("kind") = to_string(v.kind), py::arg("message") = v.message));
    }
    return py::dict(py::arg("ok") = report.ok(), py::arg("violations") = violations,
                    py::arg("warnings") = report.warnings);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Related-term search with adapted HITS and category clustering";

    static py::exception<Error> base_error(m, "SynarchError");
    static py::exception<NotFoundError> not_found(m, "NotFoundError", base_error.ptr());
    static py::exception<ValidationError> validation(m, "ValidationError", base_error.ptr());
    static py::exception<ParseError> parse(m, "ParseError", base_error.ptr());
    static py::exception<ArgumentError> argument(m, "ArgumentError", base_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NotFoundError& e) {
            py::object exc = py::handle(not_found.ptr())(e.what());
            exc.attr("suggestions") = e.suggestions();
            PyErr_SetObject(not_found.ptr(), exc.ptr());
        } catch (const ValidationError& e) {
            py::object exc = py::handle(validation.ptr())(e.what());
            exc.attr("offenders") = e.offenders();
            PyErr_SetObject(validation.ptr(), exc.ptr());
        } catch (const ParseError& e) {
            py::set_error(parse, e.what());
        } catch (const ArgumentError& e) {
            py::set_error(argument, e.what());
        } catch (const Error& e) {
            py::set_error(base_error, e.what());
        }
    });

    py::class_<Corpus>(m, "Corpus")
        .def_property_readonly("page_count", &Corpus::page_count)
        .def_property_readonly("link_count", &Corpus::link_count)
        .def("has_title", [](const Corpus& c, const std::string& t) { return c.find_title(t).has_value(); })
        .def("page_id", [](const Corpus& c, const std::string& t) { return c.id(c.index_of_title(t)).value; },
             py::arg("title"))
        .def("title", [](const Corpus& c, std::uint64_t id) { return c.title(c.index_of(PageId{id})); },
             py::arg("page_id"))
        .def(
            "neighbors",
            [](const Corpus& c, const std::string& title, const std::string& direction) {
                auto dir = parse_direction(direction);
                if (!dir) throw ArgumentError("direction must be one of in, out, both");
                std::vector<std::uint64_t> ids;
                for (auto id : neighbors(c, c.id(c.index_of_title(title)), *dir)) ids.push_back(id.value);
                return ids;
            },
            py::arg("title"), py::arg("direction") = "out")
        .def("serialize", &serialize_corpus)
        .def("save", &save_corpus, py::arg("path"))
        .def("__eq__", [](const Corpus& a, const Corpus& b) { return a == b; });

    m.def(
        "load_corpus",
        [](const std::filesystem::path& path, bool lenient) { return load_corpus(path, LoadOptions{lenient}); },
        py::arg("path"), py::arg("lenient") = false);

    m.def("validate_file", &validate_file, py::arg("path"), py::arg("lenient") = false,
          "Violation report for a corpus file");

    m.def(
        "generate_synthetic",
        [](std::size_t topics, std::size_t pages_per_topic, double p_intra, double p_inter, std::uint64_t seed) {
            return generate_synthetic({topics, pages_per_topic, p_intra, p_inter, seed});
        },
        py::arg("topics"), py::arg("pages_per_topic"), py::arg("p_intra") = 0.3, py::arg("p_inter") = 0.01,
        py::arg("seed") = 0);

    const QueryParams defaults;
    m.def(
        "query_json",
        [](const Corpus& corpus, const std::string& word, std::size_t top_n, std::size_t top_m, double k, double eps,
           std::size_t max_iter, std::size_t in_cap, double max_cluster_weight, std::size_t include_ancestors) {
            const auto params = make_params(top_n, top_m, k, eps, max_iter, in_cap, max_cluster_weight,
                                            include_ancestors);
            std::string out;
            {
                py::gil_scoped_release release;
                out = to_json(query(corpus, word, params)).dump();
            }
            return out;
        },
        py::arg("corpus"), py::arg("word"), py::arg("top_n") = defaults.hits.top_n,
        py::arg("top_m") = defaults.hits.top_m, py::arg("k") = defaults.hits.k, py::arg("eps") = defaults.hits.eps,
        py::arg("max_iter") = defaults.hits.max_iter, py::arg("in_cap") = defaults.hits.in_cap,
        py::arg("max_cluster_weight") = defaults.clustering.max_cluster_weight,
        py::arg("include_ancestors") = defaults.clustering.include_ancestors,
        "Structured search result as a JSON string");

    m.def(
        "iterate_hits",
        [](std::uint64_t source, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edges, double eps,
           std::size_t max_iter) {
            BaseSubgraph sub;
            sub.source = PageId{source};
            sub.members.push_back(sub.source);
            for (const auto& [from, to] : edges) {
                sub.members.push_back(PageId{from});
                sub.members.push_back(PageId{to});
                sub.edges.emplace_back(PageId{from}, PageId{to});
            }
            std::sort(sub.members.begin(), sub.members.end());
            sub.members.erase(std::unique(sub.members.begin(), sub.members.end()), sub.members.end());
            std::sort(sub.edges.begin(), sub.edges.end());
            sub.edges.erase(std::unique(sub.edges.begin(), sub.edges.end()), sub.edges.end());
            const auto scores = iterate_hits(sub, eps, max_iter);
            py::dict authority;
            py::dict hub;
            for (std::size_t i = 0; i < scores.pages.size(); ++i) {
                authority[py::int_(scores.pages[i].value)] = scores.authority[i];
                hub[py::int_(scores.pages[i].value)] = scores.hub[i];
            }
            return py::dict(py::arg("authority") = authority, py::arg("hub") = hub,
                            py::arg("iterations") = scores.iterations_run, py::arg("converged") = scores.converged);
        },
        py::arg("source"), py::arg("edges"), py::arg("eps") = defaults.hits.eps,
        py::arg("max_iter") = defaults.hits.max_iter, "Hub and authority scores over an explicit edge list");

    m.def(
        "cluster_categories",
        [](const std::vector<std::pair<std::uint64_t, std::size_t>>& categories,
           const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edges, double max_cluster_weight) {
            CategorySubgraph input;
            for (const auto& [cat, articles] : categories) {
                input.categories.push_back(CategoryId{cat});
                auto& refs = input.article_refs[CategoryId{cat}];
                for (std::size_t i = 0; i < articles; ++i) refs.push_back(PageId{i});
            }
            for (const auto& [a, b] : edges) input.category_edges.emplace_back(CategoryId{a}, CategoryId{b});
            py::list out;
            for (const auto& node : cluster_categories(build_category_graph(input, max_cluster_weight))) {
                std::vector<std::uint64_t> cats;
                for (auto c : node.category_ids) cats.push_back(c.value);
                out.append(py::dict(py::arg("id") = node.cluster_id, py::arg("categories") = cats,
                                    py::arg("articles_count") = node.articles_count,
                                    py::arg("edges_count") = node.edges_count, py::arg("weight") = node.weight));
            }
            return out;
        },
        py::arg("categories"), py::arg("edges"), py::arg("max_cluster_weight") = defaults.clustering.max_cluster_weight,
        "Clusters for (category id, referencing article count) pairs joined by category edges");
}
