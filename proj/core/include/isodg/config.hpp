#pragma once

#include <iosfwd>
#include <string>

#include "isodg/study.hpp"

namespace isodg {

/// Parses a study configuration from plain "key = value" text.
///
/// Lines starting with '#' or ';' are comments; "[section]" headers are
/// allowed and ignored (keys are global). Recognized keys:
///
///   problem        disc2d | ball3d | square2d | polyhedron3d   (required)
///   k              field degree, integer >= 1                  (required)
///   levels         single integer n (levels 0..n-1) or an
///                  explicit list, e.g. "0 1 2 3" or "1,2,3"
///   mesh_files     whitespace-separated mesh file paths
///                  (alternative to levels)
///   geometry_kind  curved | straight            (default curved)
///   quadrature     integer exactness override   (default module rules)
///   solver         direct | gmres               (default direct)
///   tolerance      gmres relative residual      (default 1e-12)
///   restart        gmres restart length         (default 60)
///   max_iterations gmres iteration budget       (default automatic)
///   threads        assembly thread count        (default 1)
///
/// Throws ConfigParseError naming the offending field and line.
StudyConfig parse_study_config(std::istream& in);
StudyConfig parse_study_config_file(const std::string& path); // IoError if unreadable

} // namespace isodg
