#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "netgeo/cell.hpp"
#include "netgeo/netbuild.hpp"
#include "netgeo/search.hpp"
#include "netgeo/stats.hpp"

namespace netgeo {

inline constexpr const char* kArtifactVersion = "0.1.0";

// --- JSON (keys in fixed order for byte-reproducible output) ---------------

nlohmann::ordered_json network_to_json(const PlanarNetwork& net, double side);
// Round-trip loader; throws InvalidArgument on malformed documents.
PlanarNetwork network_from_json(const nlohmann::ordered_json& doc, double* side = nullptr);

nlohmann::ordered_json accounting_to_json(const LengthAccounting& acc);
nlohmann::ordered_json stat_report_to_json(const StatReport& report);
nlohmann::ordered_json equidist_report_to_json(const EquidistReport& report);
nlohmann::ordered_json search_result_to_json(const SearchResult& result);

// --- CSV (RFC-4180, header row, 17 significant digits) ---------------------

std::string format_real(double v);  // %.17g
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Points file: CSV with an "x,y" header. Loader accepts files with or
// without the header line.
void write_points_csv(const std::string& path, const std::vector<Point>& pts);
std::vector<Point> read_points_csv(const std::string& path);

// --- SVG (fixed layer group ids, no timestamps) -----------------------------

// Layered drawing of a network: one <g> per layer (id="layer-<Name>") plus a
// configuration-point group (id="layer-Points").
std::string network_to_svg(const PlanarNetwork& net, double side);

// Drawing of a two-point cell: polygon, its vertices, and the two anchor
// points at separation m.
std::string cell_to_svg(const ConvexCell& cell, Point vi, Point vj);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// --- Run manifest ------------------------------------------------------------

// Every command emits one manifest describing the run, even on failure.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters;  // full parameter record
  std::vector<uint64_t> seeds;
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;
  bool ok = true;
  std::string error;

  nlohmann::ordered_json to_json() const;
  void write(const std::string& path) const;
};

}  // namespace netgeo
