pub struct Exact;
pub struct ExactPoint;
pub struct ConstantExpr;
