#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "duplex/workbench.hpp"

namespace duplex {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(line ? source + ":" + std::to_string(line) + ": " + what : source + ": " + what),
      line_(line) {}

MultiplexDataset ingest_multiplex(const std::string& path, const std::string& layer_a, const std::string& layer_b) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return ingest_multiplex(in, layer_a, layer_b, path);
}

MultiplexDataset ingest_multiplex(std::istream& in, const std::string& layer_a, const std::string& layer_b,
                                  const std::string& source_name) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::unordered_set<std::string> layers_seen;
  std::vector<Edge> edges_a;
  std::vector<Edge> edges_b;

  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first[0] == '#') {
      std::string arg;
      if (first == "#@node") {
        if (!(ss >> arg)) throw ParseError(source_name, lineno, "#@node needs a label");
        id_of(arg);
      } else if (first == "#@layer") {
        if (!(ss >> arg)) throw ParseError(source_name, lineno, "#@layer needs an id");
        layers_seen.insert(arg);
      }
      continue;
    }
    std::string src, tgt, weight, extra;
    if (!(ss >> src >> tgt)) throw ParseError(source_name, lineno, "expected 'layer source target [weight]'");
    if (ss >> weight) {
      std::istringstream ws(weight);
      double w;
      if (!(ws >> w) || !ws.eof()) throw ParseError(source_name, lineno, "weight '" + weight + "' is not a number");
      if (ss >> extra) throw ParseError(source_name, lineno, "unexpected token '" + extra + "'");
    }
    layers_seen.insert(first);
    const bool in_a = first == layer_a;
    const bool in_b = first == layer_b;
    if (!in_a && !in_b) continue;
    Edge e{id_of(src), id_of(tgt)};
    if (in_a) edges_a.push_back(e);
    if (in_b) edges_b.push_back(e);
  }
  for (const auto& l : {layer_a, layer_b})
    if (!layers_seen.count(l)) throw ParseError(source_name, 0, "unknown layer id '" + l + "'");
  if (labels.empty()) throw ParseError(source_name, 0, "selected layers contain no nodes");

  const std::size_t n = labels.size();
  DirectedLayer a(n, std::move(edges_a));
  DirectedLayer b(n, std::move(edges_b));
  MultiplexDataset ds;
  ds.duplicates_collapsed = a.duplicates_collapsed() + b.duplicates_collapsed();
  ds.net = std::make_shared<const DuplexNetwork>(std::move(a), std::move(b));
  ds.labels = std::move(labels);
  ds.layer_a = layer_a;
  ds.layer_b = layer_b;
  return ds;
}

void write_canonical(std::ostream& out, const DuplexNetwork& net, const std::vector<std::string>& labels) {
  const std::size_t n = net.node_count();
  if (!labels.empty() && labels.size() != n) throw std::invalid_argument("write_canonical: label count mismatch");
  auto label = [&](NodeId v) { return labels.empty() ? std::to_string(v) : labels[v]; };
  out << "# duplex n=" << n << " m1=" << net.layer(Layer::first).edge_count()
      << " m2=" << net.layer(Layer::second).edge_count() << "\n";
  out << "#@layer 1\n#@layer 2\n";
  for (NodeId v = 0; v < n; ++v) out << "#@node " << label(v) << "\n";
  for (Layer l : kLayers)
    for (const auto& e : net.layer(l).edges())
      out << number_of(l) << ' ' << label(e.source) << ' ' << label(e.target) << "\n";
}

}  // namespace duplex
