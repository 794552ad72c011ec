#pragma once

#include <span>
#include <string>
#include <vector>

#include "envoff/envelopes.hpp"
#include "envoff/offsets.hpp"
#include "envoff/singularities.hpp"

// Text serialisation. Numbers are written with round-trip precision, so
// identical inputs give byte-identical output. Schemas: docs/formats.md.
namespace envoff::io {

/// Header `segment_id,u,x,y`, one row per point.
std::string to_csv(const Polyline& line);
std::string to_json(const Polyline& line);

/// Header `branch_id,segment_id,u,x,y`. Exceptional circles are JSON-only.
std::string to_csv(const EnvelopeResult& env);
std::string to_json(const EnvelopeResult& env);

/// Header `kind,method,side,distance,param_s,param_t,x,y,residual`.
std::string to_csv(std::span<const SingularPoint> pts);
std::string to_json(std::span<const SingularPoint> pts);

/// Header `x,y`.
std::string to_csv(std::span<const Vec2> pts);

}  // namespace envoff::io
