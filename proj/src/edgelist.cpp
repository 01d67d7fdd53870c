#include "kronlab/edgelist.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "kronlab/errors.hpp"

namespace kronlab {

std::optional<int> EdgeListHeader::k() const {
  auto it = fields.find("k");
  if (it == fields.end()) return std::nullopt;
  int k = 0;
  const auto& s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParseError(fmt::format("bad k in edge-list header: '{}'", s));
  }
  return k;
}

namespace {

std::uint64_t parse_u64(std::string_view tok, std::size_t line_no) {
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ParseError(fmt::format("line {}: bad vertex '{}'", line_no, tok));
  }
  return x;
}

}  // namespace

EdgeList read_edge_list(std::istream& in) {
  EdgeList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string kv;
      while (ss >> kv) {
        auto eq = kv.find('=');
        if (eq != std::string::npos) out.header.fields[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      continue;
    }
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a >> b) || (ss >> extra)) {
      throw ParseError(fmt::format("line {}: expected two vertex ids", line_no));
    }
    const std::uint64_t u = parse_u64(a, line_no);
    const std::uint64_t v = parse_u64(b, line_no);
    out.max_label = std::max({out.max_label, u, v});
    out.pairs.emplace_back(u, v);
  }
  return out;
}

EdgeList read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path));
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& header,
                     const std::vector<Arc>& pairs) {
  if (!header.empty()) {
    out << '#';
    for (const auto& [k, v] : header) out << ' ' << k << '=' << v;
    out << '\n';
  }
  for (const auto& [u, v] : pairs) out << u << '\t' << v << '\n';
}

}  // namespace kronlab
