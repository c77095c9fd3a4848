"""PTSpectra 入口点

支持 python -m src 运行。
"""

from src.main import main

if __name__ == "__main__":
    main()
