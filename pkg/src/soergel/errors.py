# Exception hierarchy; every error carries a stable machine-readable code.


class SoergelError(Exception):
    code = "error"

    def payload(self):
        return {"error": self.code, "message": str(self)}


class SchemaError(SoergelError):
    code = "schema_error"


class PairingNotTwo(SoergelError):
    code = "pairing_not_two"


class BraidFailure(SoergelError):
    code = "braid_failure"


class ZeroRoot(SoergelError):
    code = "zero_root"


class IrrationalCosine(SoergelError):
    code = "irrational_cosine"


class LengthBoundExceeded(SoergelError):
    code = "length_bound_exceeded"


class NotInParabolicModule(SoergelError):
    code = "not_in_parabolic_module"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def payload(self):
        out = super().payload()
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class MiddleMismatch(SoergelError):
    code = "middle_mismatch"


class NonUnitriangularBar(SoergelError):
    code = "non_unitriangular_bar"


class InexactDivision(SoergelError):
    code = "inexact_division"


class SingularTransition(SoergelError):
    code = "singular_transition"


class AssumptionFailed(SoergelError):
    code = "assumption_failed"


class DegreeBoundTooSmall(SoergelError):
    code = "degree_bound_too_small"


class IdempotentSplitFailure(SoergelError):
    code = "idempotent_split_failure"


class NotRightFree(SoergelError):
    code = "not_right_free"
