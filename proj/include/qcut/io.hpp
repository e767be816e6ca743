#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qcut/certify.hpp"
#include "qcut/model.hpp"
#include "qcut/verify.hpp"

namespace qcut {

using Json = nlohmann::json;

// Body with either a split or a quadratic forbidden region.
struct Instance {
  ConvexBody body;
  std::optional<SplitDisjunction> split;
  std::optional<QuadraticForbidden> forbidden;

  Forbidden region() const;
};

struct CutFile {
  CutResult result;
  Json provenance = Json::object();
};

// All parsers throw Error(InvalidInput) on schema violations.
Json to_json(const Vec& v);
Json to_json(const Mat& m);
Vec vec_from_json(const Json& j);
Mat mat_from_json(const Json& j);

Json to_json(const ConvexBody& body);
ConvexBody body_from_json(const Json& j);
Json to_json(const SplitDisjunction& s);
SplitDisjunction split_from_json(const Json& j);
Json to_json(const QuadraticForbidden& f);
QuadraticForbidden forbidden_from_json(const Json& j);

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json to_json(const Cut& cut);
Cut cut_from_json(const Json& j);
Json to_json(const CutFile& file);
CutFile cut_file_from_json(const Json& j);

Json to_json(const Point& p);
Json to_json(const VerifyReport& r);
Json to_json(const OracleComparison& c);
Json to_json(const FriendsCertificate& c);

Json read_json_file(const std::string& path);
// Two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace qcut
