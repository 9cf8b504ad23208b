#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ztop/dsequence.hpp"
#include "ztop/topology.hpp"
#include "ztop/uniform.hpp"
#include "ztop/weak.hpp"
#include "ztop/zelenyuk.hpp"

namespace ztop {

using Json = nlohmann::ordered_json;

Json to_json(const Verdict& v);
Json to_json(const Enclosure& e);
Json to_json(const DistanceValue& d);
Json to_json(const DigitVector& d);
Json to_json(const ConvergenceCertificate& c);
Json to_json(const SeparationResult& s);
Json to_json(const ContinuityResult& c);
Json to_json(const PruferElement& p);
Json to_json(const SignedCombination& s);
Json to_json(const SearchCaps& c);
Json to_json(const BracketResult& b);
Json to_json(const TailCertificate& t);
Json to_json(const TranslationReport& t);
Json to_json(const ScanRow& r);
Json to_json(const AxiomsReport& r);
Json to_json(const CompareReport& r, const std::vector<NeighborhoodSpec>& t1, const std::vector<NeighborhoodSpec>& t2);
Json to_json(const CoverResult& c, const ReplayResult* replay);

std::string csv_scan(const std::vector<ScanRow>& rows);
std::string csv_convergence(const ConvergenceCertificate& c);
std::string csv_distance(const Integer& m, const Integer& n, const DistanceValue& d);

}  // namespace ztop
