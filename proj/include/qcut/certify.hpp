#pragma once

#include <string>

#include "qcut/interscuts.hpp"
#include "qcut/model.hpp"

namespace qcut {

// point = alpha p0 + (1 - alpha) p1 with p0 on the low side and p1 on the high side.
// For aggregation certificates the sides are the negative and positive crossings
// along the last direction.
struct FriendsCertificate {
  Point p0;
  Point p1;
  double alpha = 1.0;
  SplitSide side0 = SplitSide::Below;
  SplitSide side1 = SplitSide::Above;
};

FriendsCertificate friends_split(const ConvexBody& body, const SplitDisjunction& split, const Point& point);
FriendsCertificate friends_aggregation(const AggregationForm& form, const Point& point);

struct CertificateCheck {
  bool ok = true;
  double worst = 0.0;  // largest scaled defect seen
  std::string failure;

  explicit operator bool() const { return ok; }
};

CertificateCheck check_certificate(const ConvexBody& body, const SplitDisjunction& split, const Point& point,
                                   const FriendsCertificate& cert, double tol = 1e-8);
CertificateCheck check_certificate(const AggregationForm& form, const Point& point, const FriendsCertificate& cert,
                                   double tol = 1e-8);

}  // namespace qcut
