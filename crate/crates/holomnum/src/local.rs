pub struct BasisLabel;
pub struct LocalBasisStructure;
pub struct LogSeries;
