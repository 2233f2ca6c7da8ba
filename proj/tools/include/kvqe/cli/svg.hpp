/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kvqe::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers_only = false;
};

/// Self-contained SVG line chart; NaN points are skipped.
void write_svg_plot(std::ostream &out, const std::string &title, const std::string &x_label,
                    const std::string &y_label, const std::vector<Series> &series);

} // namespace kvqe::cli
