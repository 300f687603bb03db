#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "botbuster/synth.hpp"
#include "botbuster/trace.hpp"

namespace botbuster {

/// Trace file contract shared by the generator, the detector and external
/// ingestion: one `time,user,msg` record per line (decimal seconds,
/// integer user index, unsigned 64-bit message id), sorted by time, with
/// `#`-prefixed comment lines allowed anywhere.
std::vector<TraceEvent> read_trace(std::istream& in, const std::string& name);
std::vector<TraceEvent> read_trace_file(const std::string& path);

void write_trace(std::ostream& out, std::span<const TraceEvent> events,
                 std::span<const std::pair<std::string, std::string>> echo);
void write_trace_file(const std::string& path, std::span<const TraceEvent> events,
                      std::span<const std::pair<std::string, std::string>> echo);

/// Sidecar ground-truth file: header `user,label`, then one `u,bot` or
/// `u,normal` row per user.
void write_labels_file(const std::string& path, std::span<const UserLabel> labels,
                       std::span<const std::pair<std::string, std::string>> echo);
std::vector<UserLabel> read_labels_file(const std::string& path);

/// Flat key = value config file; `#` comments and blank lines ignored.
std::map<std::string, std::string> read_key_values(const std::string& path);

/// Applies config-file keys to a SimConfig (unknown keys are errors).
void apply_sim_key(SimConfig& cfg, const std::string& key, const std::string& value);

/// Subnet spec used by the CLI: comma-separated user indices, each item
/// either a single index or an inclusive `a-b` range.
Subnet parse_subnet(const std::string& spec);

/// Time grid spec: either `start:step:end` or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec);

} // namespace botbuster
