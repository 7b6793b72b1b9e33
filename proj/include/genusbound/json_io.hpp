#pragma once

#include <string>

#include "json.hpp"

#include "genusbound/cutoff.hpp"
#include "genusbound/forms.hpp"
#include "genusbound/interval.hpp"
#include "genusbound/lfunc.hpp"

namespace genusbound {

using Json = nlohmann::ordered_json;

Json form_to_json(const QuadraticForm &f);

/// {d, h, ambiguous, genera, ocpg, forms}
Json to_json(const GenusReport &r);

/// {"lo": "p/q", "hi": "r/s"}
Json to_json(const Interval &x);
Interval interval_from_json(const Json &j);

Json to_json(const CheckRecord &c);
CheckRecord check_from_json(const Json &j);

Json to_json(const CutoffCertificate &cert);
CutoffCertificate certificate_from_json(const Json &j);

/// {d, S, h, w, l1_lo, l1_hi, bound_lo, bound_hi, verdict}; bound fields
/// are null when no hypothesis was checked.
Json lvalue_json(std::int64_t d, const Interval &l1, const BoundCheck *check);

} // namespace genusbound
