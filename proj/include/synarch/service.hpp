#pragma once

#include "synarch/corpus.hpp"
#include "synarch/pipeline.hpp"
#include "synarch/ratings.hpp"

#include <functional>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace synarch {

/// HTTP handlers over a shared read-only corpus and a rating store. Every
/// handler returns a JSON body; errors carry an "error" field.
class Service {
public:
    struct Reply {
        int status = 200;
        std::string body;
    };

    Service(const Corpus& corpus, RatingStore& ratings, QueryParams defaults = {},
            std::function<std::int64_t()> clock = {});

    /// POST /api/search
    Reply search(const std::string& body) const;
    /// GET /api/pages/{title}
    Reply page(const std::string& title) const;
    /// GET /api/pages/{title}/neighbors?dir=&limit=
    Reply neighbors(const std::string& title, const std::optional<std::string>& dir,
                    const std::optional<std::string>& limit) const;
    /// GET /api/ratings?query=
    Reply get_ratings(const std::optional<std::string>& query) const;
    /// PUT /api/ratings
    Reply put_rating(const std::string& body);
    /// GET /api/health
    Reply health() const;
    /// GET /api/defaults
    Reply defaults() const;

    /// Registers every route on `server`.
    void mount(httplib::Server& server);

private:
    const Corpus& corpus_;
    RatingStore& ratings_;
    QueryParams defaults_;
    std::function<std::int64_t()> clock_;
};

struct ServeOptions {
    std::string host = "127.0.0.1";
    int port = 8642;
};

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool serve(Service& service, const ServeOptions& options);

} // namespace synarch
