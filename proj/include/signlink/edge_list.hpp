#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "signlink/graph.hpp"

namespace signlink {

// Canonical text format: '#' lines are comments, data lines hold
// whitespace-separated `src dst sign` with sign in {-1, 1}.

/// Throws InputError naming the offending line.
std::vector<RawEdge> parse_edge_list(std::string_view text);
std::vector<RawEdge> read_edge_list(const std::filesystem::path& path);

SignedDigraph load_graph(const std::filesystem::path& path);

/// Writes `src dst sign` lines using raw ids, in edge id order.
void write_edge_list(std::ostream& out, const SignedDigraph& g);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace signlink
