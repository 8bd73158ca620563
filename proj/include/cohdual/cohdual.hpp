#pragma once

#include "cohdual/coherence.hpp"
#include "cohdual/discrimination.hpp"
#include "cohdual/duality.hpp"
#include "cohdual/errors.hpp"
#include "cohdual/information.hpp"
#include "cohdual/linalg.hpp"
#include "cohdual/model.hpp"
#include "cohdual/povm.hpp"
#include "cohdual/sampling.hpp"
