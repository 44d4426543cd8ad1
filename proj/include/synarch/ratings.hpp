#pragma once

#include "synarch/errors.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace synarch {

/// An expert's judgment that `candidate` is (rated) or is not a synonym of `query`.
struct Rating {
    std::string query;
    std::string candidate;
    bool rated = false;
    /// UTC seconds since the epoch.
    std::int64_t timestamp = 0;

    bool operator==(const Rating&) const = default;
};

class StoreError : public Error {
public:
    StoreError(const std::string& what, std::filesystem::path path) : Error(what), path_(std::move(path)) {}
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Write-through rating log, one JSON object per line. Later lines override
/// earlier ones for the same (query, candidate). Upserts are serialized and
/// reach the file before they return.
class RatingStore {
public:
    /// Loads `path` if it exists. Unparseable lines are skipped and reported
    /// through `warnings`.
    explicit RatingStore(std::filesystem::path path, std::vector<std::string>* warnings = nullptr);

    /// Throws StoreError if the record cannot be persisted; the in-memory
    /// state is unchanged in that case.
    Rating upsert(Rating rating);

    /// Ratings for `query`, ordered by candidate.
    std::vector<Rating> for_query(const std::string& query) const;
    std::size_t size() const;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::string, std::string>, Rating> entries_;
    bool needs_newline_ = false;
};

} // namespace synarch
