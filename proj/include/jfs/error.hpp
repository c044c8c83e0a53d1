#pragma once

#include <stdexcept>
#include <string>

namespace jfs {

// Root of every error raised by the toolkit. Subclasses carry no extra state;
// the message names the offending input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define JFS_DECLARE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

JFS_DECLARE_ERROR(DimensionError);
JFS_DECLARE_ERROR(UndefinedRegionError);
JFS_DECLARE_ERROR(EmptyAggregateError);
JFS_DECLARE_ERROR(InvalidClassError);
JFS_DECLARE_ERROR(RleFormatError);
JFS_DECLARE_ERROR(IoError);
JFS_DECLARE_ERROR(MissingEntryError);
JFS_DECLARE_ERROR(DuplicateEntryError);
JFS_DECLARE_ERROR(FormatError);
JFS_DECLARE_ERROR(GenerationError);
JFS_DECLARE_ERROR(BackendError);
JFS_DECLARE_ERROR(ContractViolationError);
JFS_DECLARE_ERROR(SpawnError);
JFS_DECLARE_ERROR(ProtocolError);
JFS_DECLARE_ERROR(SupportPoolError);
JFS_DECLARE_ERROR(GroupError);
JFS_DECLARE_ERROR(CaseError);

#undef JFS_DECLARE_ERROR

}  // namespace jfs
