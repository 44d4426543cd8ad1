#include "synarch/service.hpp"

#include "synarch/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <charconv>
#include <ctime>

namespace synarch {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Service::Reply reply(int status, const ordered_json& body) { return {status, body.dump()}; }

Service::Reply error_reply(int status, const std::string& message) {
    return reply(status, ordered_json{{"error", message}});
}

Service::Reply field_errors(const std::vector<FieldError>& errors) {
    ordered_json fields = ordered_json::array();
    for (const auto& e : errors) fields.push_back(ordered_json{{"field", e.field}, {"message", e.message}});
    return reply(400, ordered_json{{"error", "invalid parameters"}, {"fields", fields}});
}

Service::Reply not_found(const NotFoundError& e) {
    return reply(404, ordered_json{{"error", e.what()}, {"suggestions", e.suggestions()}});
}

void read_count(const json& body, const char* field, std::size_t& target, std::vector<FieldError>& errors) {
    auto it = body.find(field);
    if (it == body.end()) return;
    if (it->is_number_unsigned()) {
        target = it->get<std::size_t>();
    } else if (it->is_number_integer()) {
        errors.push_back({field, "must be nonnegative"});
    } else {
        errors.push_back({field, "must be an integer"});
    }
}

void read_real(const json& body, const char* field, double& target, std::vector<FieldError>& errors) {
    auto it = body.find(field);
    if (it == body.end()) return;
    if (it->is_number()) {
        target = it->get<double>();
    } else {
        errors.push_back({field, "must be a number"});
    }
}

ordered_json rating_json(const Rating& r) {
    return ordered_json{{"query", r.query}, {"candidate", r.candidate}, {"rated", r.rated}, {"timestamp", r.timestamp}};
}

ordered_json ratings_json(const std::string& query, const std::vector<Rating>& ratings) {
    ordered_json list = ordered_json::array();
    for (const auto& r : ratings) list.push_back(rating_json(r));
    return ordered_json{{"query", query}, {"ratings", list}};
}

std::optional<std::string> query_param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    return req.get_param_value(name);
}

void send(httplib::Response& res, const Service::Reply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
}

} // namespace

Service::Service(const Corpus& corpus, RatingStore& ratings, QueryParams defaults, std::function<std::int64_t()> clock)
    : corpus_(corpus), ratings_(ratings), defaults_(defaults), clock_(std::move(clock)) {
    if (!clock_) clock_ = [] { return static_cast<std::int64_t>(std::time(nullptr)); };
}

Service::Reply Service::search(const std::string& body) const {
    auto request = json::parse(body, nullptr, false);
    if (request.is_discarded() || !request.is_object()) return error_reply(400, "request body must be a JSON object");

    static const char* known[] = {"word", "top_n", "top_m", "k", "eps", "max_iter", "in_cap",
                                  "max_cluster_weight", "include_ancestors"};
    std::vector<FieldError> errors;
    for (const auto& item : request.items()) {
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known)) {
            errors.push_back({item.key(), "unknown parameter"});
        }
    }
    auto word = request.find("word");
    if (word == request.end() || !word->is_string()) errors.push_back({"word", "required string"});

    QueryParams params = defaults_;
    read_count(request, "top_n", params.hits.top_n, errors);
    read_count(request, "top_m", params.hits.top_m, errors);
    read_real(request, "k", params.hits.k, errors);
    read_real(request, "eps", params.hits.eps, errors);
    read_count(request, "max_iter", params.hits.max_iter, errors);
    read_count(request, "in_cap", params.hits.in_cap, errors);
    read_real(request, "max_cluster_weight", params.clustering.max_cluster_weight, errors);
    read_count(request, "include_ancestors", params.clustering.include_ancestors, errors);
    if (errors.empty()) errors = check(params);
    if (!errors.empty()) return field_errors(errors);

    try {
        return reply(200, to_json(query(corpus_, word->get<std::string>(), params)));
    } catch (const NotFoundError& e) {
        return not_found(e);
    }
}

Service::Reply Service::page(const std::string& title) const {
    try {
        const auto index = corpus_.index_of_title(title);
        ordered_json cats = ordered_json::array();
        for (auto c : corpus_.categories(index)) {
            cats.push_back(ordered_json{{"id", c.value}, {"name", corpus_.tree().at(c).name}});
        }
        return reply(200, ordered_json{{"page_id", corpus_.id(index).value},
                                       {"title", corpus_.title(index)},
                                       {"out_degree", corpus_.out_links(index).size()},
                                       {"in_degree", corpus_.in_links(index).size()},
                                       {"categories", cats}});
    } catch (const NotFoundError& e) {
        return not_found(e);
    }
}

Service::Reply Service::neighbors(const std::string& title, const std::optional<std::string>& dir,
                                  const std::optional<std::string>& limit) const {
    std::vector<FieldError> errors;
    auto direction = parse_direction(dir.value_or("out"));
    if (!direction) errors.push_back({"dir", "must be one of in, out, both"});
    std::size_t max_count = 100;
    if (limit) {
        const auto* first = limit->data();
        const auto* last = first + limit->size();
        auto [ptr, ec] = std::from_chars(first, last, max_count);
        if (ec != std::errc() || ptr != last) errors.push_back({"limit", "must be a nonnegative integer"});
    }
    if (!errors.empty()) return field_errors(errors);

    try {
        const auto index = corpus_.index_of_title(title);
        const auto all = synarch::neighbors(corpus_, corpus_.id(index), *direction);
        ordered_json list = ordered_json::array();
        for (std::size_t i = 0; i < all.size() && i < max_count; ++i) {
            list.push_back(ordered_json{{"page_id", all[i].value}, {"title", corpus_.title(corpus_.index_of(all[i]))}});
        }
        return reply(200, ordered_json{{"title", title},
                                       {"direction", dir.value_or("out")},
                                       {"total", all.size()},
                                       {"neighbors", list}});
    } catch (const NotFoundError& e) {
        return not_found(e);
    }
}

Service::Reply Service::get_ratings(const std::optional<std::string>& query) const {
    if (!query) return field_errors({{"query", "required"}});
    return reply(200, ratings_json(*query, ratings_.for_query(*query)));
}

Service::Reply Service::put_rating(const std::string& body) {
    auto request = json::parse(body, nullptr, false);
    if (request.is_discarded() || !request.is_object()) return error_reply(400, "request body must be a JSON object");
    std::vector<FieldError> errors;
    for (const auto& item : request.items()) {
        if (item.key() != "query" && item.key() != "candidate" && item.key() != "rated") {
            errors.push_back({item.key(), "unknown field"});
        }
    }
    auto query = request.find("query");
    auto candidate = request.find("candidate");
    auto rated = request.find("rated");
    if (query == request.end() || !query->is_string() || query->get<std::string>().empty()) {
        errors.push_back({"query", "required non-empty string"});
    }
    if (candidate == request.end() || !candidate->is_string() || candidate->get<std::string>().empty()) {
        errors.push_back({"candidate", "required non-empty string"});
    }
    if (rated == request.end() || !rated->is_boolean()) errors.push_back({"rated", "required boolean"});
    if (!errors.empty()) return field_errors(errors);

    try {
        Rating stored = ratings_.upsert({query->get<std::string>(), candidate->get<std::string>(),
                                         rated->get<bool>(), clock_()});
        return reply(200, ratings_json(stored.query, ratings_.for_query(stored.query)));
    } catch (const StoreError& e) {
        return reply(500, ordered_json{{"error", e.what()}, {"path", e.path().string()}});
    }
}

Service::Reply Service::health() const {
    return reply(200, ordered_json{{"status", "ok"}, {"pages", corpus_.page_count()}, {"links", corpus_.link_count()}});
}

Service::Reply Service::defaults() const { return reply(200, to_json(defaults_)); }

void Service::mount(httplib::Server& server) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/api/search", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, search(req.body));
    });
    server.Get(R"(/api/pages/([^/]+)/neighbors)", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, neighbors(req.matches[1], query_param(req, "dir"), query_param(req, "limit")));
    });
    server.Get(R"(/api/pages/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, page(req.matches[1]));
    });
    server.Get("/api/ratings", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, get_ratings(query_param(req, "query")));
    });
    server.Put("/api/ratings", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, put_rating(req.body));
    });
    server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Get("/api/defaults", [this](const httplib::Request&, httplib::Response& res) { send(res, defaults()); });
}

bool serve(Service& service, const ServeOptions& options) {
    httplib::Server server;
    service.mount(server);
    return server.listen(options.host, options.port);
}

} // namespace synarch
