#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "seqtest/loss.hpp"
#include "seqtest/signal.hpp"

namespace seqtest {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    int n_space{1000};
    int n_time{1000};
};

struct McSpec {
    long paths{100000};
    double dt{0.0025};
    std::uint64_t seed{20240811};
};

struct FixedPointSpec {
    double damping{0.5};
    double tol{1e-3};
    int max_iter{50};
};

struct ProblemConfig {
    LossModel loss{LossModel::cross_entropy()};
    SignalModel signal{1.0, 0.0};
    double mollifier_width{0.25};
    double cost{0.1};
    double horizon{5.0};
    double prior{0.5};
    GridSpec grid;
    McSpec mc;
    FixedPointSpec fixed_point;

    void validate() const;
};

// Parses a config JSON file. Also accepts a result.json emitted by the CLI
// (the snapshot stored under its "config" key is used), so runs can be
// reproduced by pointing --config at previous output. Throws ConfigError with
// the offending key in the message.
ProblemConfig load_config_file(const std::string& path);
ProblemConfig parse_config_json(const std::string& text);

// Serialized snapshot that parse_config_json accepts back verbatim.
std::string config_to_json_string(const ProblemConfig& cfg);

// Applies one dotted-path override like "signal.lambda1=-0.5" onto config
// JSON text and returns the updated text. Values parse as JSON scalars when
// possible, otherwise as strings.
std::string apply_override(const std::string& json_text, const std::string& assignment);

} // namespace seqtest
