# Инициализация пакета reductions
