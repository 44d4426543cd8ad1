#include "synarch/cli.hpp"

#include "synarch/errors.hpp"
#include "synarch/service.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

namespace synarch::cli {

namespace {

void add_search_flags(CLI::App& cmd, QueryParams& params) {
    cmd.add_option("--top-n", params.hits.top_n, "Size of the authority set")->capture_default_str();
    cmd.add_option("--top-m", params.hits.top_m, "Size of the hub set")->capture_default_str();
    cmd.add_option("--k", params.hits.k, "Authority weight in the selection objective")->capture_default_str();
    cmd.add_option("--eps", params.hits.eps, "Convergence threshold")->capture_default_str();
    cmd.add_option("--max-iter", params.hits.max_iter, "Iteration limit")->capture_default_str();
    cmd.add_option("--in-cap", params.hits.in_cap, "In-links kept per root page")->capture_default_str();
    cmd.add_option("--max-cluster-weight", params.clustering.max_cluster_weight, "Merge threshold")
        ->capture_default_str();
    cmd.add_option("--include-ancestors", params.clustering.include_ancestors,
                   "Parent category levels added before clustering")
        ->capture_default_str();
}

std::string score(double value) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(6) << value;
    return s.str();
}

std::string join_ids(const std::vector<ClusterId>& ids) {
    std::string out;
    for (auto id : ids) {
        if (!out.empty()) out += ',';
        out += std::to_string(id);
    }
    return out.empty() ? "-" : out;
}

void render_table(const SearchResult& result, std::ostream& out) {
    std::size_t width = 5;
    for (const auto& row : result.candidates) width = std::max(width, row.title.size());

    out << std::left << std::setw(4) << "#" << std::setw(10) << "page_id" << std::setw(static_cast<int>(width) + 2)
        << "title" << std::setw(11) << "authority" << std::setw(11) << "hub" << "clusters\n";
    std::size_t rank = 0;
    for (const auto& row : result.candidates) {
        out << std::left << std::setw(4) << ++rank << std::setw(10) << row.page.value
            << std::setw(static_cast<int>(width) + 2) << row.title << std::setw(11) << score(row.authority)
            << std::setw(11) << (row.hub ? score(*row.hub) : "-") << join_ids(row.clusters) << '\n';
    }
    out << '\n';
    std::map<PageId, const std::string*> titles;
    for (const auto& row : result.candidates) titles[row.page] = &row.title;
    for (const auto& cluster : result.clusters) {
        out << "cluster " << cluster.id << " \"" << cluster.name << "\" weight " << cluster.weight << ":";
        for (auto p : cluster.pages) out << ' ' << *titles.at(p);
        out << '\n';
    }
    for (const auto& d : result.diagnostics) out << "note: " << d << '\n';
}

void render_text(const SearchResult& result, std::ostream& out) {
    out << result.query << ':';
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
        out << (i ? ", " : " ") << result.candidates[i].title;
    }
    out << '\n';
    std::map<PageId, const std::string*> titles;
    for (const auto& row : result.candidates) titles[row.page] = &row.title;
    for (const auto& cluster : result.clusters) {
        out << '[' << cluster.name << ']';
        for (std::size_t i = 0; i < cluster.pages.size(); ++i) out << (i ? ", " : " ") << *titles.at(cluster.pages[i]);
        out << '\n';
    }
    for (const auto& d : result.diagnostics) out << "note: " << d << '\n';
}

int report_domain_error(const Error& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        for (const auto& offender : v->offenders()) err << "  " << offender << '\n';
    }
    if (const auto* nf = dynamic_cast<const NotFoundError*>(&e); nf && !nf->suggestions().empty()) {
        err << "did you mean:";
        for (const auto& s : nf->suggestions()) err << " \"" << s << '"';
        err << '\n';
    }
    return 1;
}

} // namespace

void render(const SearchResult& result, Format format, std::ostream& out) {
    switch (format) {
    case Format::table: render_table(result, out); break;
    case Format::text: render_text(result, out); break;
    case Format::structured: out << to_json(result).dump(2) << '\n'; break;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Related-term search over hyperlinked, categorized corpora", "synarch"};
    app.require_subcommand(1);

    std::string corpus_path;
    bool lenient = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check a corpus file and list every violation");
    validate_cmd->add_option("--corpus", corpus_path, "Corpus file")->required();
    validate_cmd->add_flag("--lenient", lenient, "Accept a category forest");

    SyntheticParams gen;
    std::string output_path;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a planted-topic corpus");
    gen_cmd->add_option("--topics", gen.topics)->capture_default_str();
    gen_cmd->add_option("--pages-per-topic", gen.pages_per_topic)->capture_default_str();
    gen_cmd->add_option("--p-intra", gen.p_intra)->capture_default_str();
    gen_cmd->add_option("--p-inter", gen.p_inter)->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
    gen_cmd->add_option("-o,--output", output_path, "Output file (standard output when omitted)");

    QueryParams params;
    std::string word;
    Format format = Format::table;
    const std::map<std::string, Format> formats{
        {"table", Format::table}, {"text", Format::text}, {"structured", Format::structured}};
    auto* search_cmd = app.add_subcommand("search", "Find related terms for a page title");
    search_cmd->add_option("--corpus", corpus_path, "Corpus file")->required();
    search_cmd->add_option("--word", word, "Page title to search from")->required();
    search_cmd->add_option("--format", format, "table, text or structured")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    search_cmd->add_flag("--lenient", lenient, "Accept a category forest");
    add_search_flags(*search_cmd, params);

    ServeOptions serve_options;
    std::string ratings_path = "./ratings.ndjson";
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--corpus", corpus_path, "Corpus file")->required();
    serve_cmd->add_option("--port", serve_options.port)->capture_default_str();
    serve_cmd->add_option("--host", serve_options.host)->capture_default_str();
    serve_cmd->add_option("--ratings", ratings_path)->capture_default_str();
    serve_cmd->add_flag("--lenient", lenient, "Accept a category forest");
    add_search_flags(*serve_cmd, params);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n" << "run 'synarch --help' for usage\n";
        return 2;
    }

    try {
        LoadOptions load{lenient};
        std::vector<std::string> warnings;

        if (*validate_cmd) {
            std::ifstream in(corpus_path, std::ios::binary);
            if (!in) throw NotFoundError("cannot open corpus file " + corpus_path);
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            const auto report = validate(parse_corpus(text), load);
            for (const auto& w : report.warnings) err << "warning: " << w << '\n';
            for (const auto& v : report.violations) out << to_string(v.kind) << ": " << v.message << '\n';
            if (!report.ok()) {
                err << "error: " << report.violations.size() << " violation(s)\n";
                return 1;
            }
            out << "ok\n";
            return 0;
        }

        if (*gen_cmd) {
            const auto corpus = generate_synthetic(gen);
            if (output_path.empty()) {
                out << serialize_corpus(corpus);
            } else {
                save_corpus(corpus, output_path);
            }
            return 0;
        }

        if (auto errors = check(params); !errors.empty()) {
            for (const auto& e : errors) {
                auto flag = e.field;
                std::replace(flag.begin(), flag.end(), '_', '-');
                err << "error: --" << flag << ' ' << e.message << '\n';
            }
            return 1;
        }
        const auto corpus = load_corpus(corpus_path, load, &warnings);
        for (const auto& w : warnings) err << "warning: " << w << '\n';

        if (*search_cmd) {
            render(query(corpus, word, params), format, out);
            return 0;
        }

        warnings.clear();
        RatingStore store(ratings_path, &warnings);
        for (const auto& w : warnings) err << "warning: " << w << '\n';
        Service service(corpus, store, params);
        err << "serving " << corpus.page_count() << " pages on http://" << serve_options.host << ':'
            << serve_options.port << '\n';
        if (!serve(service, serve_options)) {
            err << "error: cannot listen on " << serve_options.host << ':' << serve_options.port << '\n';
            return 1;
        }
        return 0;
    } catch (const Error& e) {
        return report_domain_error(e, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace synarch::cli
