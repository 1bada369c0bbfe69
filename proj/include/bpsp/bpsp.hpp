#pragma once

#include "bpsp/error.hpp"
#include "bpsp/heuristics.hpp"
#include "bpsp/instance.hpp"
#include "bpsp/io.hpp"
#include "bpsp/ion.hpp"
#include "bpsp/ising.hpp"
#include "bpsp/lightcone.hpp"
#include "bpsp/parallel.hpp"
#include "bpsp/qaoa.hpp"
#include "bpsp/statevector.hpp"
#include "bpsp/experiments.hpp"
