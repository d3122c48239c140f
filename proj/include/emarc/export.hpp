#ifndef EMARC_EXPORT_HPP
#define EMARC_EXPORT_HPP

#include "emarc/arcs.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace emarc {

// Header `chunk,<emotion>,...` in the arc's emotion order, one row per
// chunk, 2-decimal fixed values. When a smoothed series is present it is
// emitted as parallel `<emotion>_smoothed` columns. comment_lines, when
// given, are prepended as `# ...` lines (the pipeline uses this to embed the
// run configuration); a bare call writes exactly header + rows.
void write_arc_csv(std::ostream& out, const Arc& arc,
                   const std::vector<std::string>& comment_lines = {});

// Full-precision JSON with chunking/smoothing metadata. run_config_json,
// when non-empty, must be a serialized JSON object and is embedded verbatim
// under "run_config".
void write_arc_json(std::ostream& out, const Arc& arc, std::string_view run_config_json = {});
Arc read_arc_json(std::istream& in);

// Standalone SVG line chart: one polyline per selected emotion over chunk
// index (smoothed series when present, otherwise the per-10k scores), with
// axes, legend and title. Unknown emotions or an empty subset raise
// ConfigError. run_config_json, when non-empty, is embedded in a <metadata>
// element.
void write_arc_svg(std::ostream& out, const Arc& arc,
                   const std::vector<std::string>& emotion_subset, std::string_view title,
                   std::string_view run_config_json = {});

// 2-decimal fixed formatting used by the CSV and totals tables
std::string format_fixed2(double value);

} // namespace emarc

#endif
