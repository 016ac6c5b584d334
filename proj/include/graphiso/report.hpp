// report.hpp -- run configuration, JSON serialization of result structs,
// and the report envelope emitted by the command-line tool.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphiso/isoperimetry.hpp"
#include "graphiso/spectral.hpp"
#include "graphiso/transport.hpp"
#include "graphiso/walks.hpp"

namespace graphiso {

// Insertion-ordered JSON keeps reports stable and readable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

// Everything that determines a run. Serialized into every report so the
// output is reproducible from the report alone.
struct RunConfig {
    std::string subcommand;
    std::string graph;                  // family descriptor, may be empty
    std::vector<double> p{2.0};
    std::uint64_t seed = 1;
    std::uint32_t threads = 0;          // resolved value, see resolve_threads
    std::uint64_t budget_vertices = std::uint64_t{1} << 26;
    std::string out;                    // output path; empty = stdout
    std::map<std::string, double> tolerances;
};

// Flag value if positive, else GRAPHISO_THREADS, else hardware default.
std::uint32_t resolve_threads(std::uint32_t flag_value);

Json to_json(const RunConfig& c);

// Report envelope: artifact name/version, the run configuration and a
// timestamp (the only field exempt from byte-identical determinism).
Json make_report(const RunConfig& c, Json payload);

// Writes to c.out, or stdout when empty. Returns the path written ("-" for
// stdout).
std::string write_report(const RunConfig& c, const Json& report);

Json to_json(const ChainItem& it);
Json to_json(const ChainReport& r);
Json to_json(const CheegerResult& r);
Json to_json(const VariationalResult& r);
Json to_json(const Profile& p, bool include_witnesses = false);
Json to_json(const OptimalSets& s);
Json to_json(const ProfileFit& f);
Json to_json(const GeometryReport& g);
Json to_json(const BoundCheck& b);
Json to_json(const RadialCheck& r);
Json to_json(const GrowthTable& t);
Json to_json(const CounterexampleReport& r);
Json to_json(const Measure& m);
Json to_json(const PairingBound& b);
Json to_json(const PotentialPattern& p);
Json to_json(const FolnerRadiusResult& r);
Json to_json(const FolnerRecord& r);
Json to_json(const DecayFit& f);
Json to_json(const PipelineReport& r);

// CSV for the return-probability series: header "k,rho,loss".
std::string rho_series_csv(const RhoSeries& s);

}  // namespace graphiso
