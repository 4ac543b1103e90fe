#include "netgeo/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "netgeo/errors.hpp"

namespace netgeo {

using nlohmann::ordered_json;

namespace {

Layer layer_from_name(const std::string& name) {
  for (Layer layer : {Layer::Tree, Layer::MediumGrid, Layer::HotspotCell,
                      Layer::HotspotConnector, Layer::PoissonLine})
    if (name == layer_name(layer)) return layer;
  throw InvalidArgument("unknown layer name: " + name);
}

}  // namespace

ordered_json network_to_json(const PlanarNetwork& net, double side) {
  ordered_json doc;
  doc["format"] = "netgeo-network";
  doc["version"] = kArtifactVersion;
  doc["side"] = side;
  ordered_json nodes = ordered_json::array();
  for (const Point& p : net.nodes) nodes.push_back({p.x, p.y});
  doc["nodes"] = std::move(nodes);
  ordered_json edges = ordered_json::array();
  for (const auto& e : net.edges)
    edges.push_back({e.u, e.v, e.length, layer_name(e.layer)});
  doc["edges"] = std::move(edges);
  doc["point_nodes"] = net.point_nodes;
  return doc;
}

PlanarNetwork network_from_json(const ordered_json& doc, double* side) {
  if (!doc.is_object() || doc.value("format", "") != "netgeo-network")
    throw InvalidArgument("network_from_json: not a netgeo-network document");
  for (const char* key : {"nodes", "edges", "point_nodes"})
    if (!doc.contains(key))
      throw InvalidArgument(std::string("network_from_json: missing key '") + key + "'");
  PlanarNetwork net;
  if (side) *side = doc.value("side", 0.0);
  for (const auto& item : doc.at("nodes")) {
    if (!item.is_array() || item.size() != 2)
      throw InvalidArgument("network_from_json: node entries must be [x, y]");
    net.nodes.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  const int n = static_cast<int>(net.nodes.size());
  for (const auto& item : doc.at("edges")) {
    if (!item.is_array() || item.size() != 4)
      throw InvalidArgument("network_from_json: edge entries must be [u, v, length, layer]");
    PlanarNetwork::Edge e{item[0].get<int>(), item[1].get<int>(), item[2].get<double>(),
                          layer_from_name(item[3].get<std::string>())};
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || !(e.length >= 0.0))
      throw InvalidArgument("network_from_json: edge out of range");
    net.edges.push_back(e);
  }
  for (const auto& item : doc.at("point_nodes")) {
    int id = item.get<int>();
    if (id < 0 || id >= n) throw InvalidArgument("network_from_json: point node out of range");
    net.point_nodes.push_back(id);
  }
  net.build_adjacency();
  return net;
}

ordered_json accounting_to_json(const LengthAccounting& acc) {
  ordered_json doc;
  doc["Tree"] = acc.tree;
  doc["MediumGrid"] = acc.medium_grid;
  doc["HotspotCell"] = acc.hotspot_cell;
  doc["HotspotConnector"] = acc.hotspot_connector;
  doc["PoissonLine"] = acc.poisson_line;
  doc["total"] = acc.total;
  doc["baseline_tree_length"] = acc.baseline_tree_length;
  return doc;
}

ordered_json stat_report_to_json(const StatReport& report) {
  ordered_json doc;
  doc["mean_excess"] = report.mean_excess;
  doc["se_excess"] = report.se_excess;
  doc["mean_ratio"] = report.mean_ratio;
  doc["se_ratio"] = report.se_ratio;
  doc["max_excess"] = report.max_excess;
  doc["max_ratio"] = report.max_ratio;
  doc["pairs_used"] = report.pairs_used;
  doc["pairs_skipped_coincident"] = report.pairs_skipped_coincident;
  return doc;
}

ordered_json equidist_report_to_json(const EquidistReport& report) {
  ordered_json doc;
  doc["L"] = report.L;
  doc["cost"] = report.cost;
  doc["reference"] = reference_law_name(report.reference);
  doc["reference_sample_size"] = report.reference_sample_size;
  doc["seed"] = report.seed;
  return doc;
}

ordered_json search_result_to_json(const SearchResult& result) {
  ordered_json doc;
  doc["accepted"] = result.accepted;
  doc["attempts_used"] = result.attempts_used;
  doc["best_attempt"] = result.best_attempt;
  ordered_json log = ordered_json::array();
  for (const AttemptRecord& rec : result.log) {
    ordered_json item;
    item["attempt"] = rec.attempt;
    item["seed"] = rec.seed;
    item["length_excess"] = rec.length_excess;
    item["route_excess"] = rec.route_excess;
    item["accepted"] = rec.accepted;
    log.push_back(std::move(item));
  }
  doc["log"] = std::move(log);
  return doc;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(header[i]);
  }
  out << "\r\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw SizeMismatch("write_csv: row width differs from header");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << "\r\n";
  }
  write_text_file(path, out.str());
}

void write_points_csv(const std::string& path, const std::vector<Point>& pts) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(pts.size());
  for (const Point& p : pts) rows.push_back({format_real(p.x), format_real(p.y)});
  write_csv(path, {"x", "y"}, rows);
}

std::vector<Point> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("read_points_csv: cannot open " + path);
  std::vector<Point> pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, y;
    if (ss >> x >> y) {
      pts.push_back({x, y});
    } else if (first) {
      // header line
    } else {
      throw InvalidArgument("read_points_csv: malformed line: " + line);
    }
    first = false;
  }
  return pts;
}

namespace {

struct SvgMapper {
  double x0, y0, scale, height;
  Point map(Point p) const {
    return {(p.x - x0) * scale + 20.0, height - ((p.y - y0) * scale + 20.0)};
  }
};

const char* layer_color(Layer layer) {
  switch (layer) {
    case Layer::Tree: return "#1b9e77";
    case Layer::MediumGrid: return "#7570b3";
    case Layer::HotspotCell: return "#d95f02";
    case Layer::HotspotConnector: return "#e7298a";
    case Layer::PoissonLine: return "#66a61e";
  }
  return "#000000";
}

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  out += buf;
}

void append_line(std::string& out, Point a, Point b) {
  out += "<line x1=\"";
  append_num(out, a.x);
  out += "\" y1=\"";
  append_num(out, a.y);
  out += "\" x2=\"";
  append_num(out, b.x);
  out += "\" y2=\"";
  append_num(out, b.y);
  out += "\"/>\n";
}

}  // namespace

std::string network_to_svg(const PlanarNetwork& net, double side) {
  const double view = 1000.0;
  SvgMapper mapper{0.0, 0.0, (view - 40.0) / std::max(side, 1e-12), view};
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
         "viewBox=\"0 0 1000 1000\">\n";
  out += "<rect x=\"20\" y=\"20\" width=\"960\" height=\"960\" fill=\"none\" "
         "stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  for (Layer layer : {Layer::PoissonLine, Layer::MediumGrid, Layer::HotspotCell,
                      Layer::HotspotConnector, Layer::Tree}) {
    out += "<g id=\"layer-";
    out += layer_name(layer);
    out += "\" stroke=\"";
    out += layer_color(layer);
    out += "\" stroke-width=\"";
    out += (layer == Layer::Tree ? "1.6" : "1.0");
    out += "\" fill=\"none\">\n";
    for (const auto& e : net.edges)
      if (e.layer == layer)
        append_line(out, mapper.map(net.nodes[static_cast<size_t>(e.u)]),
                    mapper.map(net.nodes[static_cast<size_t>(e.v)]));
    out += "</g>\n";
  }
  out += "<g id=\"layer-Points\" fill=\"#000000\" stroke=\"none\">\n";
  for (int id : net.point_nodes) {
    Point p = mapper.map(net.nodes[static_cast<size_t>(id)]);
    out += "<circle cx=\"";
    append_num(out, p.x);
    out += "\" cy=\"";
    append_num(out, p.y);
    out += "\" r=\"2.0\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string cell_to_svg(const ConvexCell& cell, Point vi, Point vj) {
  if (cell.vertices.size() < 3) throw DegenerateCell("cell_to_svg: fewer than 3 vertices");
  Point lo = cell.vertices[0], hi = cell.vertices[0];
  for (const Point& p : cell.vertices) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
  }
  double extent = std::max({hi.x - lo.x, hi.y - lo.y, 1e-12});
  const double view = 1000.0;
  SvgMapper mapper{lo.x, lo.y, (view - 40.0) / extent, view};
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
         "viewBox=\"0 0 1000 1000\">\n";
  out += "<g id=\"layer-Cell\" stroke=\"#d95f02\" stroke-width=\"1.5\" fill=\"#fdd0a2\" "
         "fill-opacity=\"0.4\">\n<polygon points=\"";
  for (size_t i = 0; i < cell.vertices.size(); ++i) {
    Point p = mapper.map(cell.vertices[i]);
    if (i) out += ' ';
    append_num(out, p.x);
    out += ',';
    append_num(out, p.y);
  }
  out += "\"/>\n</g>\n<g id=\"layer-CellVertices\" fill=\"#d95f02\" stroke=\"none\">\n";
  for (const Point& v : cell.vertices) {
    Point p = mapper.map(v);
    out += "<circle cx=\"";
    append_num(out, p.x);
    out += "\" cy=\"";
    append_num(out, p.y);
    out += "\" r=\"3.0\"/>\n";
  }
  out += "</g>\n<g id=\"layer-Anchors\" fill=\"#000000\" stroke=\"none\">\n";
  for (Point v : {vi, vj}) {
    Point p = mapper.map(v);
    out += "<circle cx=\"";
    append_num(out, p.x);
    out += "\" cy=\"";
    append_num(out, p.y);
    out += "\" r=\"4.0\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("write_text_file: cannot open " + path);
  out << content;
  if (!out) throw InvalidArgument("write_text_file: write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("read_text_file: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json RunManifest::to_json() const {
  ordered_json doc;
  doc["command"] = command;
  doc["version"] = kArtifactVersion;
  doc["parameters"] = parameters;
  doc["seeds"] = seeds;
  doc["outputs"] = outputs;
  doc["duration_seconds"] = duration_seconds;
  doc["status"] = ok ? "ok" : "error";
  if (!ok) doc["error"] = error;
  return doc;
}

void RunManifest::write(const std::string& path) const {
  write_text_file(path, to_json().dump(2) + "\n");
}

}  // namespace netgeo
