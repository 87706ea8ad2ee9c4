#pragma once

#include "cubesim/cube.hpp"
#include "cubesim/cube_states.hpp"
#include "cubesim/errors.hpp"
#include "cubesim/experiments.hpp"
#include "cubesim/ifm_result.hpp"
#include "cubesim/io.hpp"
#include "cubesim/linalg.hpp"
#include "cubesim/multiport.hpp"
#include "cubesim/phase_matrix.hpp"
#include "cubesim/quantum.hpp"
#include "cubesim/reference_data.hpp"
#include "cubesim/reproduce.hpp"
#include "cubesim/sampling.hpp"
#include "cubesim/tolerance.hpp"
