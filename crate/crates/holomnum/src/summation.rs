pub struct Algorithm;
