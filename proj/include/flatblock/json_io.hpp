#pragma once

// JSON serialization of surfaces (exact strings, bit-exact round trip) and a
// small SVG emitter for figures.

#include "flatblock/surface.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fb {

nlohmann::json surface_to_json(const TranslationSurface& s);
TranslationSurface surface_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(const SurfacePoint& p);
SurfacePoint point_from_json(const nlohmann::json& j);

// Solid markers for Weierstrass-type points, hollow circles for golden /
// candidate points; segments drawn as developed chords from their start.
std::string surface_to_svg(const TranslationSurface& s,
                           const std::vector<SurfacePoint>& solid = {},
                           const std::vector<SurfacePoint>& hollow = {},
                           const std::vector<Segment>& segments = {});

}  // namespace fb
