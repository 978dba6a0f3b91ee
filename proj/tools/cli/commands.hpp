#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "ars3d/ars.hpp"
#include "ars3d/sampling.hpp"

namespace ars3d::cli {

enum Exit : int {
    kOk = 0,
    kDemoFailure = 1,
    kDomain = 2,
    kRank = 3,
    kUsage = 64,
    kIo = 74,
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

struct SamplingFlags {
    std::size_t samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    double box = 2.0;
};

struct LocusFlags {
    double t = 0.0;
    Window window{};
    int resolution = 101;
    std::optional<std::string> out_path;
};

struct DemoFlags {
    SamplingFlags sampling{};
    bool rank_two_field = false;
};

int cmd_validate(const std::string& path, Streams io);
int cmd_classify(const std::string& path, Streams io);
int cmd_locus(const std::string& path, const LocusFlags& flags, Streams io);
int cmd_verify(const std::string& path, const SamplingFlags& flags, Streams io);
int cmd_demo_counterexample(const DemoFlags& flags, Streams io);
int cmd_norm(const std::string& path, const GroupPoint& p, const Eigen::Vector3d& z, Streams io);
int cmd_flow(const std::string& path, const GroupPoint& p, double s, Streams io);

/// "v1min,v1max,v2min,v2max"; throws std::invalid_argument.
Window parse_window(const std::string& text);

/// Applies ARS3D_TOL when set; throws std::invalid_argument on a bad value.
void apply_tolerance_env();

}  // namespace ars3d::cli
