#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rydgate/beams.hpp"
#include "rydgate/dioph_opt.hpp"
#include "rydgate/gate_core.hpp"
#include "rydgate/noise.hpp"

namespace rydgate {

inline constexpr const char* kVersion = "0.3.0";

using Metadata = std::map<std::string, std::string>;

// "A=6.162pi,x=1/3,phi=0.1pi" or "A=2pi,a=0.6,b=0.8" (a, b normalized).
// phi defaults to 0 and x to 1. Throws InvalidArgument.
Pulse parse_pulse(const std::string& text);

// "l0..6", "0..6" or "0,2,5" into a list of non-negative integers.
std::vector<int> parse_series(const std::string& text);

// Fidelity, U(1,1) per subsystem, GPA table and mechanism labels.
nlohmann::json protocol_record(const PulseSequence& seq);
std::string protocol_text(const PulseSequence& seq);

nlohmann::json candidate_record(const ProtocolCandidate& c);
nlohmann::json family_record(const FamilySeed& s);
nlohmann::json beam_record(const BeamAmplitudeSolution& s);
nlohmann::json noise_spec_record(const NoiseSpec& spec);

// Rows: l_prime,ideal_f,mean_f,std_f,truncations after "# key: value" metadata.
std::string write_noise_csv(const std::vector<NoiseRow>& rows, const Metadata& metadata);

// Echo of a noise spec as metadata entries (seed, stds, sampling convention).
Metadata noise_metadata(const NoiseSpec& spec, const std::string& preset);

}  // namespace rydgate
