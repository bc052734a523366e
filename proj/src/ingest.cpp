#include "signlink/ingest.hpp"

#include <curl/curl.h>
#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>
#include <zlib.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "signlink/edge_list.hpp"
#include "signlink/types.hpp"

namespace signlink {

namespace fs = std::filesystem;

namespace {

const std::array<DatasetDescriptor, 3> kDatasets{{
    {"wikipedia", "https://snap.stanford.edu/data/wikiElec.ErrVotes.txt.gz", "gzip", RawFormat::wiki_election, 7115,
     103108, 0.7879, 0.19, 0.14, 0.999},
    {"slashdot", "https://snap.stanford.edu/data/soc-sign-Slashdot090221.txt.gz", "gzip", RawFormat::snap_signed,
     82140, 549202, 0.7740, 0.17, 0.14, 1.0},
    {"epinions", "https://snap.stanford.edu/data/soc-sign-epinions.txt.gz", "gzip", RawFormat::snap_signed, 131580,
     840799, 0.8529, 0.07, 0.09, 0.991},
}};

class FileLock {
 public:
  explicit FileLock(const fs::path& path) : fd_(::open(path.c_str(), O_CREAT | O_RDWR, 0644)) {
    if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw std::runtime_error("cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_long(std::string_view s, long long& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

/// Calls fn(line_no, line) for every line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    fn(++line_no, text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
  }
}

InputError bad_line(std::size_t no, std::string_view what) {
  return InputError("line " + std::to_string(no) + ": " + std::string(what));
}

std::size_t curl_write(char* ptr, std::size_t size, std::size_t nmemb, void* userdata) {
  return std::fwrite(ptr, size, nmemb, static_cast<std::FILE*>(userdata));
}

}  // namespace

std::span<const DatasetDescriptor> known_datasets() { return kDatasets; }

const DatasetDescriptor& dataset(std::string_view name) {
  for (const auto& d : kDatasets)
    if (d.name == name) return d;
  throw InputError("unknown dataset '" + std::string(name) + "' (expected wikipedia, slashdot or epinions)");
}

void curl_download(const std::string& url, const fs::path& dest) {
  static const CURLcode init = curl_global_init(CURL_GLOBAL_DEFAULT);
  if (init != CURLE_OK) throw std::runtime_error("libcurl initialisation failed");
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) throw std::runtime_error("libcurl initialisation failed");
  std::unique_ptr<std::FILE, decltype(&std::fclose)> out(std::fopen(dest.c_str(), "wb"), std::fclose);
  if (!out) throw std::runtime_error("cannot write " + dest.string());

  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, curl_write);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, out.get());
  const CURLcode rc = curl_easy_perform(curl.get());
  out.reset();
  if (rc != CURLE_OK) {
    fs::remove(dest);
    throw std::runtime_error("download of " + url + " failed: " + curl_easy_strerror(rc));
  }
}

std::string sha256_hex(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string s;
  for (unsigned int k = 0; k < len; ++k) {
    s += hex[md[k] >> 4];
    s += hex[md[k] & 15];
  }
  return s;
}

void gunzip_file(const fs::path& src, const fs::path& dest) {
  std::unique_ptr<gzFile_s, decltype(&gzclose)> in(gzopen(src.c_str(), "rb"), gzclose);
  if (!in) throw std::runtime_error("cannot open " + src.string());
  std::ofstream out(dest, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + dest.string());
  std::array<char, 1 << 16> buf{};
  for (;;) {
    const int n = gzread(in.get(), buf.data(), static_cast<unsigned>(buf.size()));
    if (n < 0) throw std::runtime_error("corrupt gzip stream in " + src.string());
    if (n == 0) break;
    out.write(buf.data(), n);
  }
}

fs::path fetch(std::string_view name, const fs::path& cache_dir, const Downloader& download) {
  const DatasetDescriptor& d = dataset(name);
  fs::create_directories(cache_dir);
  FileLock lock(cache_dir / (d.name + ".lock"));

  const fs::path raw = cache_dir / (d.name + ".raw.txt");
  fs::path sidecar = raw;
  sidecar += ".sha256";
  if (fs::exists(raw) && fs::exists(sidecar)) {
    std::string recorded = read_file(sidecar);
    while (!recorded.empty() && (recorded.back() == '\n' || recorded.back() == ' ')) recorded.pop_back();
    if (recorded == sha256_hex(raw)) return raw;
    std::cerr << "checksum mismatch for cached " << raw << "; cache invalidated, fetching again\n";
  }
  fs::remove(raw);
  fs::remove(sidecar);

  const fs::path archive = cache_dir / (d.name + ".download");
  download(d.url, archive);
  gunzip_file(archive, raw);
  fs::remove(archive);
  write_file_atomic(sidecar, sha256_hex(raw) + "\n");
  return raw;
}

std::string normalize_snap(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for_each_line(raw, [&](std::size_t no, std::string_view line) {
    const auto f = split_fields(line);
    if (f.empty() || f[0].front() == '#') return;
    long long a = 0, b = 0, s = 0;
    if (f.size() != 3 || !parse_long(f[0], a) || !parse_long(f[1], b) || !parse_long(f[2], s))
      throw bad_line(no, "expected `FromNodeId ToNodeId Sign`");
    if (s != 1 && s != -1) throw bad_line(no, "sign must be -1 or 1");
    out += std::to_string(a);
    out += ' ';
    out += std::to_string(b);
    out += s > 0 ? " 1\n" : " -1\n";
  });
  return out;
}

std::string normalize_wiki_election(std::string_view raw) {
  std::string out;
  bool have_candidate = false;
  long long candidate = 0;
  for_each_line(raw, [&](std::size_t no, std::string_view line) {
    const auto f = split_fields(line);
    if (f.empty() || f[0].front() == '#') return;
    if (f[0] == "E") {
      have_candidate = false;
    } else if (f[0] == "U") {
      if (f.size() < 2 || !parse_long(f[1], candidate)) throw bad_line(no, "malformed U record");
      have_candidate = true;
    } else if (f[0] == "V") {
      long long vote = 0, voter = 0;
      if (f.size() < 3 || !parse_long(f[1], vote) || !parse_long(f[2], voter)) throw bad_line(no, "malformed V record");
      if (!have_candidate) throw bad_line(no, "vote before any U record");
      if (vote == 0) return;
      if (vote != 1 && vote != -1) throw bad_line(no, "vote must be -1, 0 or 1");
      out += std::to_string(voter);
      out += ' ';
      out += std::to_string(candidate);
      out += vote > 0 ? " 1\n" : " -1\n";
    } else if (f[0] != "T" && f[0] != "N") {
      throw bad_line(no, "unknown record type '" + std::string(f[0]) + "'");
    }
  });
  return out;
}

std::string normalize_text(std::string_view name, std::string_view raw) {
  const DatasetDescriptor& d = dataset(name);
  std::string body = d.format == RawFormat::wiki_election ? normalize_wiki_election(raw) : normalize_snap(raw);
  return "# " + d.name + " canonical edge list: src dst sign\n" + body;
}

fs::path normalize(std::string_view name, const fs::path& raw) {
  std::string text = normalize_text(name, read_file(raw));
  fs::path out = raw.parent_path() / (std::string(name) + ".edges");
  write_file_atomic(out, text);
  return out;
}

}  // namespace signlink
