#pragma once

#include <gtest/gtest.h>

#include "qtune/error.hpp"

namespace qtune::testing {

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no qtune::Error thrown";
  return ErrorKind::kIo;
}

}  // namespace qtune::testing
