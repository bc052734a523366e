#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace signlink {

enum class RawFormat { snap_signed, wiki_election };

/// One of the three benchmark signed networks and its published statistics.
struct DatasetDescriptor {
  std::string name;
  std::string url;
  std::string archive;  ///< "gzip"
  RawFormat format;
  std::size_t expected_nodes;
  std::size_t expected_edges;
  double expected_pos_fraction;
  double expected_psi_in_fraction;
  double expected_psi_out_fraction;
  double expected_wcc_coverage;
};

std::span<const DatasetDescriptor> known_datasets();

/// Throws InputError("unknown dataset ...").
const DatasetDescriptor& dataset(std::string_view name);

/// Fetches `url` into `dest`. Throws std::runtime_error on failure.
using Downloader = std::function<void(const std::string& url, const std::filesystem::path& dest)>;

/// libcurl-backed downloader; honours the usual *_proxy environment variables.
void curl_download(const std::string& url, const std::filesystem::path& dest);

/// Downloads and decompresses a dataset into `cache_dir` unless a cached copy
/// whose SHA-256 matches its recorded sidecar already exists. A mismatching
/// copy is deleted and fetched again. Same-dataset calls are serialized with
/// a lock file. Returns the decompressed raw file.
std::filesystem::path fetch(std::string_view name, const std::filesystem::path& cache_dir,
                            const Downloader& download = curl_download);

/// Converts native text to the canonical `src dst sign` format. Throws
/// InputError with a line number on malformed records.
std::string normalize_snap(std::string_view raw);
std::string normalize_wiki_election(std::string_view raw);
std::string normalize_text(std::string_view name, std::string_view raw);

/// Writes `<name>.edges` next to `raw` and returns its path.
std::filesystem::path normalize(std::string_view name, const std::filesystem::path& raw);

std::string sha256_hex(const std::filesystem::path& file);

/// Decompresses a gzip file (plain files pass through unchanged).
void gunzip_file(const std::filesystem::path& src, const std::filesystem::path& dest);

}  // namespace signlink
