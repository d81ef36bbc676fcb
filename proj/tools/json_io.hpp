#pragma once

#include "qca/hwclass.hpp"
#include "qca/pbwcheck.hpp"
#include "qca/repmodule.hpp"

#include "json.hpp"

namespace qca::cli {

using nlohmann::json;

// Scalars travel as strings in the QRational textual format.
json to_json(const QRational& v);
json to_json(const std::vector<QRational>& v);
json to_json(const NodePolynomial& p);
json to_json(const HighestWeightNode& h);
json to_json(const HighestWeight& h);
json to_json(const OmegaSeries& s);
json to_json(const GradedSlice& s);
json to_json(const SliceReport& r);
json to_json(const CheckReport& r);
json to_json(const Partition& p);

QRational qr_from_json(const json& j);
std::vector<QRational> qr_list_from_json(const json& j);
NodePolynomial poly_from_json(const json& j);
HighestWeightNode hw_node_from_json(const json& j);
HighestWeight hw_from_json(const json& j);
OmegaSeries series_from_json(const json& j);
SliceReport slice_report_from_json(const json& j);

}  // namespace qca::cli
