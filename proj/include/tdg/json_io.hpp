#pragma once

#include <string>

#include <json.hpp>

#include "tdg/certificate.hpp"
#include "tdg/digraph.hpp"
#include "tdg/solver.hpp"

namespace tdg {

using Json = nlohmann::json;

// Instance files: {"schema":1,"n":N,"m":M,"digraphs":[{"edges":[[u,v],...]},...],
// "meta":{...}} with 0-based vertices and colors given by array position.
// Bipartite instances use "kind":"bipartite" and a "graphs" array of
// left->right edge lists.
Json collection_to_json(const DigraphCollection& dc, const Json& meta = Json::object());
DigraphCollection collection_from_json(const Json& j);
Json bipartite_to_json(const BipartiteCollection& bc, const Json& meta = Json::object());
BipartiteCollection bipartite_from_json(const Json& j);

bool json_is_bipartite_instance(const Json& j);

// Certificates: hamilton cycles use the cyclic form
// {"kind":"hamilton-cycle","cycle":[v0,...],"colors":[c0,...]} with colors[k]
// on edge (cycle[k], cycle[(k+1) mod n]); other kinds list edges explicitly.
// Colors are 1-based in this external form.
Json certificate_to_json(const RainbowCertificate& cert);
RainbowCertificate certificate_from_json(const Json& j);

Json outcome_to_json(const SolveOutcome& outcome);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace tdg
