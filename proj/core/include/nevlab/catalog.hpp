#pragma once

#include "nevlab/meromorphic.hpp"
#include "nevlab/sphere.hpp"
#include "nevlab/surface.hpp"

#include <string>
#include <vector>

namespace nevlab {

struct CatalogEntry {
    std::string id;
    std::string summary;
};

std::vector<CatalogEntry> catalog_surfaces();
std::vector<CatalogEntry> catalog_functions();

/// Builds a surface from a config spec such as "poincare-disc" or
/// "chart:halfplane".
SurfaceModel build_surface(const std::string& spec);

/// Builds a map from a config spec: a plain catalog id ("exp"), or a
/// parametrized one:
///   rational{num:[c0,c1,...],den:[d0,...]}
///   moebius{a,b,c,d}
///   composed{outer:<id>,chart:halfplane}
MeromorphicMap build_function(const std::string& spec, const SurfaceModel& surface);

/// Parses a target: "0", "1", "-1", "inf", "1+2i", "0.5i", ...
SpherePoint parse_target(const std::string& spec);

} // namespace nevlab
