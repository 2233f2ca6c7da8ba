/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <stdexcept>
#include <string>

namespace kvqe {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define KVQE_DEFINE_ERROR(Name)                                                \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

KVQE_DEFINE_ERROR(ParseError);
KVQE_DEFINE_ERROR(MomentumViolation);
KVQE_DEFINE_ERROR(HermiticityViolation);
KVQE_DEFINE_ERROR(SectorOutOfRange);
KVQE_DEFINE_ERROR(InvalidExcitation);
KVQE_DEFINE_ERROR(IndexOutOfRange);
KVQE_DEFINE_ERROR(SizeMismatch);
KVQE_DEFINE_ERROR(OddElectronCount);
KVQE_DEFINE_ERROR(ParamLengthMismatch);
KVQE_DEFINE_ERROR(SectorEmpty);
KVQE_DEFINE_ERROR(EmptySubspace);

#undef KVQE_DEFINE_ERROR

} // namespace kvqe
