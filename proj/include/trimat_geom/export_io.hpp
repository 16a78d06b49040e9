#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "trimat_geom/verify.hpp"

namespace trimat_geom {

inline constexpr int kSchemaVersion = 1;

// Integer labels for the 8 elements of T(2) matching the reference q=2
// drawing: the radical is {0, 6} and the x22=1 coset carries the odd labels.
int figure_label_q2(uint64_t mat_code);

nlohmann::json matrix_to_json(const TriMatrix& m);
nlohmann::json counts_to_json(const std::vector<CountRow>& rows);
std::string counts_to_csv(const std::vector<CountRow>& rows);
std::string counts_to_text(const std::vector<CountRow>& rows);

// Entity listing for one kind ("points", "nonuni-fcs", "shielded").
nlohmann::json entities_to_json(const LineCensus& census,
                                const std::vector<int>& ids);
std::string entities_to_csv(const LineCensus& census,
                            const std::vector<int>& ids);
std::string entities_to_text(const LineCensus& census,
                             const std::vector<int>& ids);

nlohmann::json structure_to_json(const IncidenceStructure& s,
                                 const AxiomReport* report);
IncidenceStructure structure_from_json(const nlohmann::json& doc);

// Complete export document: census entities plus structures of one kind.
nlohmann::json export_document(const LineCensus& census, const std::string& kind,
                               const std::vector<IncidenceStructure>& structures,
                               const std::vector<AxiomReport>& reports);

nlohmann::json fastpath_to_json(const FastPathReport& r);
nlohmann::json verify_to_json(const VerifyReport& r);
std::string verify_to_text(const VerifyReport& r);

// Containment graph of the projective line: one node per point and per
// nonuni member, one node per nonzero module element they contain, an edge
// for each containment. Points are colored by set; for n=2, q=2 the element
// nodes carry the reference integer labels.
std::string line_graph_to_dot(const LineCensus& census);
std::string structures_to_dot(const std::vector<IncidenceStructure>& structures,
                              const std::string& graph_name);

}  // namespace trimat_geom
