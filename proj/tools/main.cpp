// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "hesseig/runner.hpp"

int main(int argc, char** argv) {
  return hesseig::dispatch(std::vector<std::string>(argv, argv + argc));
}
