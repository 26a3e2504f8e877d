"""Exception hierarchy shared by all modules.

Every error carries a short stable ``code`` that the CLI prints and uses to
pick the exit status, so scripts can match on it.
"""


class HeckeCMError(Exception):
    code = "error"


# galois
class NotAGroup(HeckeCMError):
    code = "not_a_group"


class ConjNotInvolution(HeckeCMError):
    code = "conj_not_involution"


class SubgroupNotClosed(HeckeCMError):
    code = "subgroup_not_closed"


class UnknownField(HeckeCMError):
    code = "unknown_field"


class NotASubfield(HeckeCMError):
    code = "not_a_subfield"


class NoCMSubfield(HeckeCMError):
    code = "no_cm_subfield"


class NotACMType(HeckeCMError):
    code = "not_a_cm_type"


class NotHeckeCharacterType(HeckeCMError):
    code = "not_hecke_character_type"


class InternalInconsistency(HeckeCMError):
    code = "internal_inconsistency"


# quadarith
class ZeroIdeal(HeckeCMError):
    code = "zero_ideal"


class NotCoprime(HeckeCMError):
    code = "not_coprime"


class ModulusTooLarge(HeckeCMError):
    code = "modulus_too_large"


# hecke / lvalues
class TrivialModulus(HeckeCMError):
    code = "trivial_modulus"


# eklattice
class OutsideConvergenceRegion(HeckeCMError):
    code = "outside_convergence_region"


class PrecisionUnachievable(HeckeCMError):
    code = "precision_unachievable"


class GammaIncompatible(HeckeCMError):
    code = "gamma_incompatible"


# periods
class ClassNumberTooLarge(HeckeCMError):
    code = "class_number_too_large"


class NonIntegralJ(HeckeCMError):
    code = "non_integral_j"


# verify
class NotCritical(HeckeCMError):
    code = "not_critical"


# cli
class SpecParseError(HeckeCMError):
    code = "parse_error"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NoSuchCharacter(HeckeCMError):
    code = "no_such_character"
