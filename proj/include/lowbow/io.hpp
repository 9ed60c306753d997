#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lowbow/classify.hpp"
#include "lowbow/geometry.hpp"
#include "lowbow/lowbow.hpp"

namespace lowbow {

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double value);

std::string point_to_csv(const SimplexPoint& point);
std::string point_to_json(const SimplexPoint& point);

/// {"locations": [...], "points": [[...]], "sigma", "c", "kernel"} with
/// "beta_floor" added for the Beta family.
std::string curve_to_json(const LowbowCurve& curve);
LowbowCurve curve_from_json(const std::string& text);

/// One JSON object per line.
void write_curves_jsonl(std::ostream& out, const std::vector<LowbowCurve>& curves);
std::vector<LowbowCurve> read_curves_jsonl(std::istream& in);

/// One row per sample point, first column mu. The multi-curve form
/// prepends a doc column.
void write_curve_csv(std::ostream& out, const LowbowCurve& curve);
void write_curves_csv(std::ostream& out, const std::vector<LowbowCurve>& curves);

/// Long-form rows plus deterministic mean/std summary rows per
/// (method, train size, sigma) group.
void write_reports_csv(std::ostream& out, const std::vector<EvalReport>& reports);
void write_reports_jsonl(std::ostream& out, const std::vector<EvalReport>& reports);

/// Wide layout: one row per task (the corpus label set), one column per
/// train size x method holding the mean error rate over repetitions.
void write_figure_table_csv(std::ostream& out, const std::vector<EvalReport>& reports);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace lowbow
