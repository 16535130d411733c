#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aec/coloring.hpp"
#include "aec/plane_graph.hpp"

namespace aec {

// Embedding format: one line per vertex, "v: n1 n2 n3 ..." (clockwise),
// '#' starts a comment, blank lines ignored.

inline PlaneGraph read_embedding(std::istream& in) {
  std::vector<std::pair<int, std::vector<int>>> entries;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head.empty() || head.back() != ':')
      throw std::invalid_argument("embedding line " + std::to_string(lineno) + ": expected 'v:'");
    int v = std::stoi(head.substr(0, head.size() - 1));
    std::vector<int> rot;
    int u;
    while (ss >> u) rot.push_back(u);
    max_id = std::max(max_id, v);
    for (int x : rot) max_id = std::max(max_id, x);
    entries.emplace_back(v, std::move(rot));
  }
  std::vector<std::vector<int>> rotation(max_id + 1);
  std::vector<char> seen(max_id + 1, 0);
  for (auto& [v, rot] : entries) {
    if (seen[v]) throw std::invalid_argument("embedding: vertex " + std::to_string(v) + " listed twice");
    seen[v] = 1;
    rotation[v] = std::move(rot);
  }
  return PlaneGraph::build_from_rotation(std::move(rotation));
}

inline void write_embedding(std::ostream& out, const PlaneGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    out << v << ':';
    for (int u : g.neighbors(v)) out << ' ' << u;
    out << '\n';
  }
}

inline std::string embedding_to_string(const PlaneGraph& g) {
  std::ostringstream ss;
  write_embedding(ss, g);
  return ss.str();
}

inline PlaneGraph embedding_from_string(const std::string& s) {
  std::istringstream ss(s);
  return read_embedding(ss);
}

// Coloring format: one line per edge, "u v c".  Rejects non-edges and colors
// outside the stated palette.

inline EdgeColoring read_coloring(std::istream& in, const PlaneGraph& g, int palette) {
  EdgeColoring c(g, palette);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    int u, v, col;
    if (!(ss >> u)) continue;
    if (!(ss >> v >> col))
      throw std::invalid_argument("coloring line " + std::to_string(lineno) + ": expected 'u v c'");
    auto id = (u >= 0 && u < g.vertex_count() && v >= 0 && v < g.vertex_count()) ? g.try_edge_index(u, v)
                                                                                 : std::nullopt;
    if (!id)
      throw std::invalid_argument("coloring line " + std::to_string(lineno) + ": " + std::to_string(u) + "-" +
                                  std::to_string(v) + " is not an edge");
    if (col < 1 || col > palette)
      throw std::invalid_argument("coloring line " + std::to_string(lineno) + ": color " + std::to_string(col) +
                                  " outside palette 1.." + std::to_string(palette));
    c.by_edge[*id] = col;
  }
  return c;
}

inline void write_coloring(std::ostream& out, const PlaneGraph& g, const EdgeColoring& c) {
  for (int e = 0; e < g.edge_count(); ++e)
    if (c.by_edge[e] != 0)
      out << g.edges()[e].u << ' ' << g.edges()[e].v << ' ' << c.by_edge[e] << '\n';
}

}  // namespace aec
