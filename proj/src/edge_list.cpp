#include "signlink/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace signlink {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_field(std::string_view& line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  std::size_t j = i;
  while (j < line.size() && !is_space(line[j])) ++j;
  std::string_view field = line.substr(i, j - i);
  line.remove_prefix(j);
  return field;
}

template <typename T>
bool parse_int(std::string_view field, T& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

}  // namespace

std::vector<RawEdge> parse_edge_list(std::string_view text) {
  std::vector<RawEdge> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    std::string_view rest = line;
    const std::string_view a = next_field(rest);
    if (a.empty() || a.front() == '#') continue;
    const std::string_view b = next_field(rest);
    const std::string_view c = next_field(rest);
    const auto fail = [&](const std::string& what) {
      return InputError("line " + std::to_string(line_no) + ": " + what + ": '" + std::string(line) + "'");
    };
    if (c.empty() || !next_field(rest).empty()) throw fail("expected 3 fields `src dst sign`");
    RawEdge e{};
    long sign = 0;
    if (!parse_int(a, e.src) || !parse_int(b, e.dst)) throw fail("node ids must be integers");
    if (!parse_int(c, sign) || (sign != 1 && sign != -1)) throw fail("sign must be -1 or 1");
    e.sign = sign_from_int(sign);
    out.push_back(e);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::vector<RawEdge> read_edge_list(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_edge_list(text);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

SignedDigraph load_graph(const std::filesystem::path& path) {
  const auto raw = read_edge_list(path);
  return SignedDigraph::build(raw);
}

void write_edge_list(std::ostream& out, const SignedDigraph& g) {
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out << g.raw_id(ed.src) << ' ' << g.raw_id(ed.dst) << ' ' << to_int(g.label(e)) << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace signlink
