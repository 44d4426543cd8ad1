#pragma once

#include "synarch/pipeline.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace synarch::cli {

enum class Format { table, text, structured };

void render(const SearchResult& result, Format format, std::ostream& out);

/// Entry point for the `synarch` tool. Exit codes: 0 success, 1 domain error
/// (not found, invalid corpus, bad parameter), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace synarch::cli
