#pragma once

#include "lcs/bessel.hpp"
#include "lcs/dynamics.hpp"
#include "lcs/error.hpp"
#include "lcs/fock.hpp"
#include "lcs/phase_space.hpp"
#include "lcs/states.hpp"
#include "lcs/statistics.hpp"
