#pragma once

#include <stdexcept>
#include <string>

namespace semeq {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SEMEQ_DEFINE_ERROR(Name)                  \
  class Name : public Error {                     \
   public:                                        \
    explicit Name(const std::string& what)        \
        : Error(std::string(#Name ": ") + what) {} \
  }

// Vertex type grammar.
SEMEQ_DEFINE_ERROR(SyntaxError);
SEMEQ_DEFINE_ERROR(SizeTooSmall);
SEMEQ_DEFINE_ERROR(DegreeTooSmall);

// Map construction and queries.
SEMEQ_DEFINE_ERROR(EdgeDegree);
SEMEQ_DEFINE_ERROR(RepeatedVertexInFace);
SEMEQ_DEFINE_ERROR(Disconnected);
SEMEQ_DEFINE_ERROR(InvalidMap);
SEMEQ_DEFINE_ERROR(NoSuchVertex);
SEMEQ_DEFINE_ERROR(NotPolyhedral);

// Enumeration.
SEMEQ_DEFINE_ERROR(InconsistentParameters);
SEMEQ_DEFINE_ERROR(BudgetExhausted);
SEMEQ_DEFINE_ERROR(CorruptCheckpoint);

// File formats.
SEMEQ_DEFINE_ERROR(MapFormatError);

#undef SEMEQ_DEFINE_ERROR

}  // namespace semeq
