#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pt_horizon/topology.hpp"

namespace pt_horizon::io {

inline constexpr const char* kSliceCsvHeader = "u,v,W,Q,P,inside,component";

// 17 significant digits, shortest of fixed/scientific.
std::string format_double(double x);

// One row per sample in storage order.
void write_slice_csv(std::ostream& out, const topology::SliceGrid& grid,
                     const topology::ComponentReport& report);

// Membership cells (one rect per run of inside cells in a row) with the
// W (solid), Q (dashed) and P (dotted) boundary polylines on top.
void write_slice_svg(std::ostream& out, const topology::SliceGrid& grid,
                     const topology::ComponentReport& report,
                     const std::vector<topology::BoundaryCurve>& curves);

nlohmann::json component_report_json(const topology::ComponentReport& report);

}  // namespace pt_horizon::io
