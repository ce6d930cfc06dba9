#pragma once

#include "semifield/classify.hpp"
#include "semifield/errors.hpp"
#include "semifield/fixtures.hpp"
#include "semifield/gf_matrix.hpp"
#include "semifield/parallel.hpp"
#include "semifield/rational.hpp"
#include "semifield/records.hpp"
#include "semifield/report.hpp"
#include "semifield/search.hpp"
#include "semifield/semifield.hpp"
