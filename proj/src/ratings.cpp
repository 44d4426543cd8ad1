#include "synarch/ratings.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <unistd.h>

namespace synarch {

namespace {

std::optional<Rating> parse_rating(const std::string& line) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    auto query = j.find("query");
    auto candidate = j.find("candidate");
    auto rated = j.find("rated");
    auto timestamp = j.find("timestamp");
    if (query == j.end() || !query->is_string() || candidate == j.end() || !candidate->is_string() ||
        rated == j.end() || !rated->is_boolean() || timestamp == j.end() || !timestamp->is_number_integer()) {
        return std::nullopt;
    }
    return Rating{query->get<std::string>(), candidate->get<std::string>(), rated->get<bool>(),
                  timestamp->get<std::int64_t>()};
}

std::string format_rating(const Rating& r) {
    nlohmann::ordered_json j;
    j["query"] = r.query;
    j["candidate"] = r.candidate;
    j["rated"] = r.rated;
    j["timestamp"] = r.timestamp;
    return j.dump();
}

} // namespace

RatingStore::RatingStore(std::filesystem::path path, std::vector<std::string>* warnings) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) return;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    needs_newline_ = !content.empty() && content.back() != '\n';

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < content.size()) {
        auto end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        const auto line = content.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (auto rating = parse_rating(line)) {
            entries_[{rating->query, rating->candidate}] = std::move(*rating);
        } else if (warnings) {
            warnings->push_back(path_.string() + ":" + std::to_string(line_no) + ": dropped unreadable rating record");
        }
    }
}

Rating RatingStore::upsert(Rating rating) {
    std::lock_guard lock(mutex_);
    std::string record = (needs_newline_ ? "\n" : "") + format_rating(rating) + "\n";

    std::FILE* file = std::fopen(path_.c_str(), "ab");
    if (!file) throw StoreError("cannot open rating store " + path_.string() + " for writing", path_);
    const bool written = std::fwrite(record.data(), 1, record.size(), file) == record.size() &&
                         std::fflush(file) == 0 && ::fsync(::fileno(file)) == 0;
    const bool closed = std::fclose(file) == 0;
    if (!written || !closed) throw StoreError("failed writing rating store " + path_.string(), path_);

    needs_newline_ = false;
    entries_[{rating.query, rating.candidate}] = rating;
    return rating;
}

std::vector<Rating> RatingStore::for_query(const std::string& query) const {
    std::lock_guard lock(mutex_);
    std::vector<Rating> out;
    for (auto it = entries_.lower_bound({query, ""}); it != entries_.end() && it->first.first == query; ++it) {
        out.push_back(it->second);
    }
    return out;
}

std::size_t RatingStore::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

} // namespace synarch
