#pragma once

#include <json.hpp>

#include "corrquad/error_bounds.hpp"

namespace corrquad {

inline void to_json(nlohmann::json& j, const BoundReport& r) {
  j = nlohmann::json{{"k", r.k},
                     {"bound_a12", r.bound_a12},
                     {"bound_a13", r.bound_a13},
                     {"bound_a14", r.bound_a14},
                     {"peano_classic", r.peano_classic},
                     {"best", r.best},
                     {"rigorous", r.rigorous}};
}

inline void from_json(const nlohmann::json& j, BoundReport& r) {
  j.at("k").get_to(r.k);
  j.at("bound_a12").get_to(r.bound_a12);
  j.at("bound_a13").get_to(r.bound_a13);
  j.at("bound_a14").get_to(r.bound_a14);
  j.at("peano_classic").get_to(r.peano_classic);
  j.at("best").get_to(r.best);
  j.at("rigorous").get_to(r.rigorous);
}

}  // namespace corrquad
