// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace agentdock {

enum class ErrorKind {
  kParse,
  kTransport,
  kProtocol,
  kModelRefusal,
  kUnsupportedCapability,
  kUnscripted,
  kOracle,
  kEmptyDistribution,
  kConfig,
  kEmptyCorpus,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. The kind lets callers
/// distinguish retryable transport failures from semantic ones without
/// a cascade of catch clauses.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define AGENTDOCK_DEFINE_ERROR(Name, Kind)                     \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& what) : Error(Kind, what) {} \
  }

AGENTDOCK_DEFINE_ERROR(ParseError, ErrorKind::kParse);
AGENTDOCK_DEFINE_ERROR(TransportError, ErrorKind::kTransport);
AGENTDOCK_DEFINE_ERROR(ProtocolError, ErrorKind::kProtocol);
AGENTDOCK_DEFINE_ERROR(ModelRefusal, ErrorKind::kModelRefusal);
AGENTDOCK_DEFINE_ERROR(UnsupportedCapability, ErrorKind::kUnsupportedCapability);
AGENTDOCK_DEFINE_ERROR(UnscriptedRequest, ErrorKind::kUnscripted);
AGENTDOCK_DEFINE_ERROR(OracleError, ErrorKind::kOracle);
AGENTDOCK_DEFINE_ERROR(EmptyDistribution, ErrorKind::kEmptyDistribution);
AGENTDOCK_DEFINE_ERROR(ConfigError, ErrorKind::kConfig);
AGENTDOCK_DEFINE_ERROR(EmptyCorpus, ErrorKind::kEmptyCorpus);
AGENTDOCK_DEFINE_ERROR(InvalidArgument, ErrorKind::kInvalidArgument);

#undef AGENTDOCK_DEFINE_ERROR

/// Rethrows an error of the same concrete kind with `context` prepended
/// to its message.
[[noreturn]] void rethrow_with_context(const Error& error, const std::string& context);

}  // namespace agentdock
