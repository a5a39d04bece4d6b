pub struct DiffOperator;
pub struct PointKind;
pub struct ThetaFormRecurrence;
