#pragma once

#include <string>

#include <json.hpp>

#include "cubemedian/builders.hpp"
#include "cubemedian/classification.hpp"
#include "cubemedian/cube_ball.hpp"
#include "cubemedian/presentation.hpp"

namespace cubemedian {

using Json = nlohmann::json;

Json ball_to_json(const CubeBall& b);
CubeBall ball_from_json(const Json& j);

Json presentation_to_json(const GroupPresentation& p);
GroupPresentation presentation_from_json(const Json& j);

DefiningGraph graph_from_json(const Json& j);
Json graph_to_json(const DefiningGraph& g);
DefiningGraph graph_from_graph6(const std::string& line);

AffineAction affine_action_from_json(const Json& j);
Json affine_action_to_json(const AffineAction& a);

Json wall_system_to_json(const WallSystem& ws);

Json virtual_basis_to_json(const VirtualBasis& vb);
MatQ matrix_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Deterministic report envelope: no wall-clock data unless asked for.
Json make_report(const std::string& command, const Json& config,
                 const Json& payload, long long seed, int certified_queries,
                 int truncated_queries);

}  // namespace cubemedian
