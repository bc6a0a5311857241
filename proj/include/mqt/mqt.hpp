#pragma once

#include "mqt/dynamics.hpp"
#include "mqt/errors.hpp"
#include "mqt/escape.hpp"
#include "mqt/model.hpp"
#include "mqt/oracle.hpp"
#include "mqt/sweep.hpp"
#include "mqt/verify.hpp"
