#pragma once

#include "qrabi/controls.hpp"
#include "qrabi/ed.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/exceptional.hpp"
#include "qrabi/gfunction.hpp"
#include "qrabi/model.hpp"
#include "qrabi/recurrence.hpp"
#include "qrabi/solver.hpp"
#include "qrabi/summation.hpp"
#include "qrabi/tridiag.hpp"
