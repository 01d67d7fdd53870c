#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kronlab/graph.hpp"

namespace kronlab {

struct EdgeListHeader {
  std::map<std::string, std::string> fields;  // key=value pairs from '#' lines

  std::optional<int> k() const;
};

struct EdgeList {
  EdgeListHeader header;
  std::vector<Arc> pairs;
  std::uint64_t max_label = 0;
};

// Lines "u<TAB>v"; '#' lines are parsed as whitespace-separated key=value pairs.
EdgeList read_edge_list(std::istream& in);
EdgeList read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& header,
                     const std::vector<Arc>& pairs);

}  // namespace kronlab
