#ifndef POLYDISC_SERIALIZE_HPP
#define POLYDISC_SERIALIZE_HPP

#include <json.hpp>

#include "polydisc/dynamics.hpp"
#include "polydisc/funceq.hpp"
#include "polydisc/normalform.hpp"

namespace polydisc {

// Insertion-ordered JSON so that identical inputs produce byte-identical
// reports.
using Json = nlohmann::ordered_json;

Json to_json(Complex z);  // [re, im]
Complex complex_from_json(const Json& j);

// Field access that raises InputError (exit code 1 at the CLI) instead of
// the library's own exception type.
const Json& require_field(const Json& j, const char* key);

Json to_json(const PolyPoint& x);
PolyPoint polypoint_from_json(const Json& j, bool disc_coords = false);

Json to_json(const MoebiusH& m);
MoebiusH moebius_from_json(const Json& j);

Json to_json(const MoebiusHtoD& g);
MoebiusHtoD moebius_htod_from_json(const Json& j);

Json to_json(const Boundary& x);

Json to_json(const MoebiusClassification& cls);

// {"space":"H","q":...,"perm":[1-based...],"gammas":[{"a":...},...]}
// Ingestion accepts "space":"D" with complex gamma entries, converted to
// half-plane coordinates through the Cayley transform.
Json to_json(const PolydiscAuto& t);
PolydiscAuto auto_from_json(const Json& j);

Json to_json(const CycleDecomposition& dec);

Json to_json(const CycleClassification& cc);
Json to_json(const AutoClassification& cls);

Json to_json(const NormalForm& nf);
NormalForm normal_form_from_json(const Json& j);

Json to_json(const AutoNormalForm& anf);

Json to_json(const ValironFunction& v);
ValironFunction valiron_from_json(const Json& j);

Json to_json(const AbelFunction& a);
AbelFunction abel_from_json(const Json& j);

Json to_json(const OrbitStats& st, bool include_sequences = true);
std::string orbit_stats_csv(const OrbitStats& st);

Json to_json(const SelfMapClassification& rep, bool include_sequences = false);

Json to_json(const ValironConditionsReport& rep);
Json to_json(const ValironVerification& rep);
Json to_json(const AbelVerification& rep);
Json to_json(const SemiModelVerification& rep);

// A disc Moebius matrix conjugated to a real half-plane matrix; throws
// InputError when the input is not (projectively) a disc automorphism.
MoebiusH halfplane_from_disc_matrix(Complex a, Complex b, Complex c, Complex d);

// Component-wise holomorphic map spec for the estimator:
// {"space":"H","q":...,"perm":[...],"lfts":[{"a":[re,im],...},...]}
// ("gammas" with real entries is accepted as well).  Disc coordinates are
// converted per-component.
HoloSelfMap selfmap_from_json(const Json& j);

}  // namespace polydisc

#endif
