from src.protocols.cubature_rule import CubatureRuleProtocol

__all__: list[str] = ["CubatureRuleProtocol"]
