#pragma once

#include <string>

#include "kgl/germ.hpp"
#include "kgl/kcone.hpp"
#include "kgl/matrix2.hpp"
#include "kgl/report.hpp"

namespace kgl::io {

// Germ wire format:
//   {"family":"enoki","alpha":[re,im],"s":n,"Q":[[re,im],...]}
//   {"family":"intermediate","p":n,"s":n,"lambda":[re,im],"low":[[re,im],...],"a":[re,im]}
//   {"family":"ih","word":"SST"}
// Malformed JSON raises Error("ParseError", ...); structural problems come
// back as validation issues.
ValidationResult germ_from_json(const std::string& text);
Json germ_to_json(const Germ& g);

// {"period":a,"a0":x,"harmonics":[[a1,b1],...]}
kcone::PeriodicFunction psi_from_json(const std::string& text);
Json psi_to_json(const kcone::PeriodicFunction& psi);

Json eigen_to_json(const EigenData& ed);

}  // namespace kgl::io
