// SPDX-License-Identifier: Apache-2.0
#include "wfsem/error.hpp"

namespace wfsem {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::UnknownDialect: return "UnknownDialect";
    case ErrorCode::DanglingLink: return "DanglingLink";
    case ErrorCode::DuplicateProcessor: return "DuplicateProcessor";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::UnknownNamespace: return "UnknownNamespace";
    case ErrorCode::MalformedOntology: return "MalformedOntology";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::UnprunedInput: return "UnprunedInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingUpstream: return "MissingUpstream";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace wfsem
