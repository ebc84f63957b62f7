#pragma once

#include <string>

#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

/// Line-oriented text format:
///   # comment
///   k <int>
///   vertices <int>
///   edge v1 ... vk
///   label <v> <string>
/// Vertices are 0-based.  serialize() emits the canonical form.
Hypergraph parse(const std::string& text);
std::string serialize(const Hypergraph& h);

/// JSON mirror: {"k":3,"n":5,"edges":[[0,1,2],[2,3,4]],"labels":{"0":"head"}}
Hypergraph parse_json(const std::string& text);
std::string serialize_json(const Hypergraph& h);

Hypergraph load_hypergraph_file(const std::string& path); // dispatches on .json suffix
void save_hypergraph_file(const Hypergraph& h, const std::string& path);

} // namespace hypermatch
