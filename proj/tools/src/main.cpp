/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include <iostream>

#include "kvqe/cli/commands.hpp"

int main(int argc, char **argv) { return kvqe::cli::run(argc, argv, std::cout, std::cerr); }
